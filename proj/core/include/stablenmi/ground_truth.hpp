#pragma once

#include <cstddef>
#include <optional>

namespace stablenmi {

/// Closed-form reference values for a synthetic family, in nats.
struct TruthRecord {
  double mi_true = 0.0;
  double h_marginal_true = 0.0;
  /// Capped at 1.0. Empty when the marginal entropy is not positive.
  std::optional<double> nmi_true;
};

/// Componentwise-correlated Gaussian pairs: I = -(d/2) ln(1 - rho^2),
/// H = (d/2) ln(2 pi e), NMI = min(1, -ln(1 - rho^2) / ln(2 pi e)).
/// rho = 1 gives the capped NMI of exactly 1. Throws DomainError outside [0, 1].
TruthRecord gaussian_truth(std::size_t d, double rho);

/// f(x) = ln Gamma(x/2) - (x/2) psi(x/2). Grows like -x/2 for large x.
double f_aux(double x);

/// c(nu, d) = f(nu) + f(nu + 2d) - 2 f(nu + d), the information carried by the
/// shared chi-square scale. Evaluated with the linear parts of f cancelled
/// analytically, so it stays accurate as nu grows.
double student_t_c(double nu, std::size_t d);

/// (d/2) ln(nu pi) + f(nu) - f(nu + d).
///
/// This is the benchmark's reference marginal entropy. It exceeds the textbook
/// multivariate-t differential entropy by exactly (d/2) psi(nu/2).
double student_t_marginal_entropy(double nu, std::size_t d);

/// mi_true = latent_mi + c(nu, d); nmi_true = mi_true / H, capped at 1.
/// latent_mi is the MI of the latent Gaussian pair (0 for identity dispersion).
TruthRecord student_t_truth(std::size_t d, double nu, double latent_mi = 0.0);

}  // namespace stablenmi
