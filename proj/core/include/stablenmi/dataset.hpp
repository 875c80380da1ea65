#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace stablenmi {

/// Paired samples (X; Y): N rows, X has dx columns and Y has dy columns, both row-major.
///
/// All entries are finite. Either marginal may be zero-dimensional (useful for
/// single-space fixtures), but the joint dimension dx + dy is at least one.
class Dataset {
 public:
  Dataset(std::size_t n, std::size_t dx, std::size_t dy, std::vector<double> x,
          std::vector<double> y);

  std::size_t size() const noexcept { return n_; }
  std::size_t dx() const noexcept { return dx_; }
  std::size_t dy() const noexcept { return dy_; }
  std::size_t joint_dim() const noexcept { return dx_ + dy_; }

  std::span<const double> x_row(std::size_t i) const noexcept {
    return {x_.data() + i * dx_, dx_};
  }
  std::span<const double> y_row(std::size_t i) const noexcept {
    return {y_.data() + i * dy_, dy_};
  }
  std::span<const double> x_values() const noexcept { return x_; }
  std::span<const double> y_values() const noexcept { return y_; }

  /// FNV-1a over the shape and the raw bytes of both matrices.
  std::uint64_t checksum() const noexcept;

  /// Same samples with the roles of X and Y exchanged.
  Dataset swapped() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::size_t n_;
  std::size_t dx_;
  std::size_t dy_;
  std::vector<double> x_;
  std::vector<double> y_;
};

/// Writes a header `x_1,...,x_dx,y_1,...,y_dy` and one sample per line using
/// shortest round-trip decimal formatting.
void write_dataset_csv(std::ostream& out, const Dataset& data);

/// Reads the format produced by write_dataset_csv. The header must have exactly
/// dx + dy columns. Throws ConfigError on malformed content.
Dataset read_dataset_csv(std::istream& in, std::size_t dx, std::size_t dy);

}  // namespace stablenmi
