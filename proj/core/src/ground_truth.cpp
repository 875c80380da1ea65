#include "stablenmi/ground_truth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "stablenmi/errors.hpp"
#include "stablenmi/special_functions.hpp"

namespace stablenmi {
namespace {

void check_student_args(double nu, std::size_t d) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw DomainError("student-t truth: nu must be positive and finite");
  }
  if (d == 0) {
    throw DomainError("student-t truth: d must be at least 1");
  }
}

constexpr double kSeriesThreshold = 10.0;

// B_{2n} / (2n - 1) for n = 1..8.
constexpr std::array<double, 8> kTailSeries = {
    1.0 / 6.0,   -1.0 / 90.0,          1.0 / 210.0, -1.0 / 210.0,
    5.0 / 594.0, -691.0 / 30030.0,     7.0 / 78.0,  -3617.0 / 7650.0,
};

// With z = x/2, f(x) = -z - (1/2) ln z + (1/2) ln(2 pi) + 1/2 + tail(z), where
// tail(z) ~ 1/(6z) decays to zero. Below the threshold the tail is formed
// directly from ln Gamma and psi; above it, from the asymptotic series.
double f_tail(double z) {
  if (z < kSeriesThreshold) {
    return ln_gamma(z) - z * digamma(z) + z + 0.5 * std::log(z) -
           0.5 * std::log(2.0 * std::numbers::pi) - 0.5;
  }
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  double series = 0.0;
  for (auto it = kTailSeries.rbegin(); it != kTailSeries.rend(); ++it) {
    series = series * inv2 + *it;
  }
  return series * inv;
}

}  // namespace

TruthRecord gaussian_truth(std::size_t d, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw DomainError("gaussian truth: rho must lie in [0, 1]");
  }
  const double half_d = 0.5 * static_cast<double>(d);
  const double log_two_pi_e = std::log(2.0 * std::numbers::pi) + 1.0;
  TruthRecord truth;
  truth.h_marginal_true = half_d * log_two_pi_e;
  if (rho == 1.0) {
    truth.mi_true = std::numeric_limits<double>::infinity();
    truth.nmi_true = 1.0;
    return truth;
  }
  const double log_residual = std::log1p(-rho * rho);
  truth.mi_true = -half_d * log_residual;
  truth.nmi_true = std::min(1.0, -log_residual / log_two_pi_e);
  return truth;
}

double f_aux(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("f_aux: argument must be positive and finite");
  }
  const double z = 0.5 * x;
  return ln_gamma(z) - z * digamma(z);
}

double student_t_c(double nu, std::size_t d) {
  check_student_args(nu, d);
  const double dd = static_cast<double>(d);
  const double z1 = 0.5 * nu;
  const double z2 = 0.5 * (nu + dd);
  const double z3 = 0.5 * (nu + 2.0 * dd);
  // The -z terms cancel exactly; ln z1 + ln z3 - 2 ln z2 = ln(1 - (d / (nu + d))^2).
  const double ratio = dd / (nu + dd);
  const double log_part = -0.5 * std::log1p(-ratio * ratio);
  return log_part + (f_tail(z1) + f_tail(z3) - 2.0 * f_tail(z2));
}

double student_t_marginal_entropy(double nu, std::size_t d) {
  check_student_args(nu, d);
  const double dd = static_cast<double>(d);
  const double z1 = 0.5 * nu;
  const double z2 = 0.5 * (nu + dd);
  // f(nu) - f(nu + d) = d/2 + (1/2) ln(1 + d/nu) + tail(z1) - tail(z2)
  return 0.5 * dd * std::log(nu * std::numbers::pi) + 0.5 * dd + 0.5 * std::log1p(dd / nu) +
         (f_tail(z1) - f_tail(z2));
}

TruthRecord student_t_truth(std::size_t d, double nu, double latent_mi) {
  TruthRecord truth;
  truth.mi_true = latent_mi + student_t_c(nu, d);
  truth.h_marginal_true = student_t_marginal_entropy(nu, d);
  if (truth.h_marginal_true > 0.0) {
    truth.nmi_true = std::min(1.0, truth.mi_true / truth.h_marginal_true);
  }
  return truth;
}

}  // namespace stablenmi
