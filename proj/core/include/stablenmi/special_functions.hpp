#pragma once

namespace stablenmi {

/// Digamma function psi(x) = d/dx ln Gamma(x) for x > 0.
///
/// Uses the upward recurrence psi(x) = psi(x + 1) - 1/x until x >= 10 and then
/// the asymptotic Bernoulli series. Absolute error is below 1e-12 * max(1, |psi(x)|).
/// Throws DomainError for x <= 0 or non-finite x.
double digamma(double x);

/// ln Gamma(x) for x > 0, via the same shift-then-Stirling-series scheme.
/// Throws DomainError for x <= 0 or non-finite x.
double ln_gamma(double x);

}  // namespace stablenmi
