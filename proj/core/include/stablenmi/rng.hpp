#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <string_view>

namespace stablenmi {

/// Identity of the sampling stack, written into experiment metadata. Bump the
/// version whenever any sampler below changes its output for a given seed.
inline constexpr std::string_view kGeneratorId =
    "mt19937_64+marsaglia-polar+marsaglia-tsang/v1";

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Order-sensitive hash of a sequence of words; used to derive per-cell seeds.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) noexcept;

/// Bit pattern of a double, so grid values can enter derive_seed exactly.
std::uint64_t double_bits(double value) noexcept;

/// Deterministic sampler on top of std::mt19937_64, whose output sequence is fixed
/// by the C++ standard. Uniforms use the top 53 bits; normals use the Marsaglia
/// polar method (pairs are cached); gamma variates use Marsaglia-Tsang with the
/// U^(1/a) boost for shape < 1.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double uniform_open();

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

  double standard_normal();

  /// ln G with G ~ Gamma(shape, scale 1). Returned in the log domain so that tiny
  /// shapes (G near 0) do not underflow.
  double log_gamma_variate(double shape);

  /// ln U with U ~ chi-square(nu) = 2 * Gamma(nu / 2).
  double log_chi_square(double nu);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace stablenmi
