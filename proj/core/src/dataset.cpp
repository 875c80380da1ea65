#include "stablenmi/dataset.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "stablenmi/errors.hpp"
#include "stablenmi/format.hpp"

namespace stablenmi {
namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& hash, const void* data, std::size_t bytes) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    hash ^= p[i];
    hash *= kFnvPrime;
  }
}

void fnv_mix_size(std::uint64_t& hash, std::size_t v) {
  const std::uint64_t value = v;
  fnv_mix(hash, &value, sizeof(value));
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

Dataset::Dataset(std::size_t n, std::size_t dx, std::size_t dy, std::vector<double> x,
                 std::vector<double> y)
    : n_(n), dx_(dx), dy_(dy), x_(std::move(x)), y_(std::move(y)) {
  if (dx_ + dy_ == 0) {
    throw ConfigError("dataset: joint dimension must be at least 1");
  }
  if (x_.size() != n_ * dx_ || y_.size() != n_ * dy_) {
    throw ConfigError("dataset: X and Y must both hold exactly N rows");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i])) {
      throw ConfigError("dataset: non-finite X entry in row " + std::to_string(i / dx_));
    }
  }
  for (std::size_t i = 0; i < y_.size(); ++i) {
    if (!std::isfinite(y_[i])) {
      throw ConfigError("dataset: non-finite Y entry in row " + std::to_string(i / dy_));
    }
  }
}

std::uint64_t Dataset::checksum() const noexcept {
  std::uint64_t hash = kFnvOffset;
  fnv_mix_size(hash, n_);
  fnv_mix_size(hash, dx_);
  fnv_mix_size(hash, dy_);
  fnv_mix(hash, x_.data(), x_.size() * sizeof(double));
  fnv_mix(hash, y_.data(), y_.size() * sizeof(double));
  return hash;
}

Dataset Dataset::swapped() const { return Dataset(n_, dy_, dx_, y_, x_); }

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  std::string line;
  for (std::size_t j = 0; j < data.dx(); ++j) {
    line += (j ? ",x_" : "x_") + std::to_string(j + 1);
  }
  for (std::size_t j = 0; j < data.dy(); ++j) {
    line += ((j || data.dx()) ? ",y_" : "y_") + std::to_string(j + 1);
  }
  out << line << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    line.clear();
    bool first = true;
    for (double v : data.x_row(i)) {
      if (!first) line += ',';
      line += format_double(v);
      first = false;
    }
    for (double v : data.y_row(i)) {
      if (!first) line += ',';
      line += format_double(v);
      first = false;
    }
    out << line << '\n';
  }
}

Dataset read_dataset_csv(std::istream& in, std::size_t dx, std::size_t dy) {
  const std::size_t columns = dx + dy;
  std::string line;
  if (!std::getline(in, line)) {
    throw ConfigError("dataset csv: missing header line");
  }
  if (split_fields(line).size() != columns) {
    throw ConfigError("dataset csv: header has " + std::to_string(split_fields(line).size()) +
                      " columns, expected dx + dy = " + std::to_string(columns));
  }
  std::vector<double> x;
  std::vector<double> y;
  std::size_t n = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_fields(line);
    if (fields.size() != columns) {
      throw ConfigError("dataset csv: line " + std::to_string(line_no) + " has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(columns));
    }
    for (std::size_t j = 0; j < columns; ++j) {
      const auto value = parse_double(fields[j]);
      if (!value) {
        throw ConfigError("dataset csv: line " + std::to_string(line_no) + ", column " +
                          std::to_string(j + 1) + " is not a number");
      }
      (j < dx ? x : y).push_back(*value);
    }
    ++n;
  }
  return Dataset(n, dx, dy, std::move(x), std::move(y));
}

}  // namespace stablenmi
