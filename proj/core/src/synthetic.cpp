#include "stablenmi/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stablenmi/errors.hpp"
#include "stablenmi/rng.hpp"

namespace stablenmi {
namespace {

void check_shape(std::size_t d, std::size_t n) {
  if (d == 0) throw ConfigError("generator: dimension d must be at least 1");
  if (n == 0) throw ConfigError("generator: sample count n must be at least 1");
}

}  // namespace

Dataset generate_gaussian(const GaussianSpec& spec) {
  check_shape(spec.d, spec.n);
  if (!(spec.rho >= 0.0 && spec.rho < 1.0)) {
    throw ConfigError("gaussian generator: rho must lie in [0, 1)");
  }
  Rng rng(spec.seed);
  const double residual = std::sqrt(1.0 - spec.rho * spec.rho);
  std::vector<double> x(spec.n * spec.d);
  std::vector<double> y(spec.n * spec.d);
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = 0; j < spec.d; ++j) {
      const double z1 = rng.standard_normal();
      const double z2 = rng.standard_normal();
      x[i * spec.d + j] = z1;
      y[i * spec.d + j] = spec.rho * z1 + residual * z2;
    }
  }
  return Dataset(spec.n, spec.d, spec.d, std::move(x), std::move(y));
}

Dataset generate_student_t(const StudentTSpec& spec) {
  check_shape(spec.d, spec.n);
  if (!(spec.nu > 0.0) || !std::isfinite(spec.nu)) {
    throw ConfigError("student-t generator: nu must be positive and finite");
  }
  Rng rng(spec.seed);
  const double log_nu = std::log(spec.nu);
  std::vector<double> x(spec.n * spec.d);
  std::vector<double> y(spec.n * spec.d);
  for (std::size_t i = 0; i < spec.n; ++i) {
    double* xi = x.data() + i * spec.d;
    double* yi = y.data() + i * spec.d;
    for (std::size_t j = 0; j < spec.d; ++j) xi[j] = rng.standard_normal();
    for (std::size_t j = 0; j < spec.d; ++j) yi[j] = rng.standard_normal();
    // sqrt(nu / U) in the log domain; U can be astronomically small for nu << 1.
    const double scale = std::exp(0.5 * (log_nu - rng.log_chi_square(spec.nu)));
    for (std::size_t j = 0; j < spec.d; ++j) {
      xi[j] *= scale;
      yi[j] *= scale;
    }
  }
  return Dataset(spec.n, spec.d, spec.d, std::move(x), std::move(y));
}

Dataset shuffle_y(const Dataset& data, std::uint64_t seed) {
  const std::size_t n = data.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.uniform_index(i)]);
  }
  const std::size_t dy = data.dy();
  std::vector<double> y(n * dy);
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = data.y_row(order[i]);
    std::copy(src.begin(), src.end(), y.begin() + static_cast<std::ptrdiff_t>(i * dy));
  }
  const auto xs = data.x_values();
  return Dataset(n, data.dx(), dy, std::vector<double>(xs.begin(), xs.end()), std::move(y));
}

}  // namespace stablenmi
