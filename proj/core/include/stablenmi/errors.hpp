#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stablenmi {

/// Invalid parameters or configuration (bad k, empty input, malformed config file).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point has zero distance to its k-th joint neighbour, so ln(epsilon) is undefined.
class DuplicatePointError : public std::runtime_error {
 public:
  explicit DuplicatePointError(std::size_t index)
      : std::runtime_error("duplicate joint point: sample " + std::to_string(index) +
                           " has a zero k-th neighbour distance"),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// The normalization factor overflowed or underflowed, so radii cannot be rescaled.
class NonFiniteNormalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stablenmi
