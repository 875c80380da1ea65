#include "stablenmi/special_functions.hpp"

#include <array>
#include <cmath>
#include <string>

#include "stablenmi/errors.hpp"

namespace stablenmi {
namespace {

constexpr double kAsymptoticThreshold = 10.0;
constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640562;

void check_argument(double x, const char* name) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError(std::string(name) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

// B_{2n} / (2n) for n = 1..8, the coefficients of the digamma series in 1/x^{2n}.
constexpr std::array<double, 8> kDigammaSeries = {
    1.0 / 12.0,        -1.0 / 120.0,       1.0 / 252.0,  -1.0 / 240.0,
    1.0 / 132.0,       -691.0 / 32760.0,   1.0 / 12.0,   -3617.0 / 8160.0,
};

// B_{2n} / (2n (2n - 1)) for n = 1..8, the Stirling series coefficients in 1/x^{2n-1}.
constexpr std::array<double, 8> kStirlingSeries = {
    1.0 / 12.0,        -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,      -691.0 / 360360.0,  1.0 / 156.0,  -3617.0 / 122400.0,
};

double digamma_asymptotic(double x) {
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  for (auto it = kDigammaSeries.rbegin(); it != kDigammaSeries.rend(); ++it) {
    series = series * inv2 + *it;
  }
  return std::log(x) - 0.5 / x - series * inv2;
}

double ln_gamma_asymptotic(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  for (auto it = kStirlingSeries.rbegin(); it != kStirlingSeries.rend(); ++it) {
    series = series * inv2 + *it;
  }
  return (x - 0.5) * std::log(x) - x + kHalfLogTwoPi + series * inv;
}

}  // namespace

double digamma(double x) {
  check_argument(x, "digamma");
  double shift = 0.0;
  while (x < kAsymptoticThreshold) {
    shift += 1.0 / x;
    x += 1.0;
  }
  return digamma_asymptotic(x) - shift;
}

double ln_gamma(double x) {
  check_argument(x, "ln_gamma");
  if (x == 1.0 || x == 2.0) {
    return 0.0;
  }
  // Gamma(x) = Gamma(x + m) / (x (x+1) ... (x+m-1)); the product stays well inside
  // double range because m <= 10.
  double product = 1.0;
  while (x < kAsymptoticThreshold) {
    product *= x;
    x += 1.0;
  }
  return ln_gamma_asymptotic(x) - std::log(product);
}

}  // namespace stablenmi
