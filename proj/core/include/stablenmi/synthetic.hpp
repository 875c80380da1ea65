#pragma once

#include <cstddef>
#include <cstdint>

#include "stablenmi/dataset.hpp"

namespace stablenmi {

/// d coordinate pairs (x_j, y_j), each bivariate normal with unit variances and
/// correlation rho, independent across j.
struct GaussianSpec {
  std::size_t d = 1;
  double rho = 0.0;
  std::size_t n = 10000;
  std::uint64_t seed = 0;
};

/// Multivariate Student-t pairs with identity dispersion: latent (x~, y~) ~ N(0, I_2d)
/// scaled by a shared sqrt(nu / U), U ~ chi-square(nu).
struct StudentTSpec {
  std::size_t d = 1;
  double nu = 1.0;
  std::size_t n = 10000;
  std::uint64_t seed = 0;
};

/// Throws ConfigError unless 0 <= rho < 1, d >= 1 and n >= 1.
Dataset generate_gaussian(const GaussianSpec& spec);

/// Throws ConfigError unless nu > 0, d >= 1 and n >= 1.
Dataset generate_student_t(const StudentTSpec& spec);

/// Copy of `data` with the Y rows permuted by a seeded Fisher-Yates shuffle.
Dataset shuffle_y(const Dataset& data, std::uint64_t seed);

}  // namespace stablenmi
