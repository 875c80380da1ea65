#include "stablenmi/estimators.hpp"

#include <cmath>

#include "stablenmi/errors.hpp"
#include "stablenmi/special_functions.hpp"

namespace stablenmi {
namespace {

double mean_digamma_of_counts(const std::vector<std::size_t>& counts) {
  double sum = 0.0;
  for (std::size_t c : counts) {
    sum += digamma(static_cast<double>(c) + 1.0);
  }
  return sum / static_cast<double>(counts.size());
}

}  // namespace

double ksg_mi(const RadiusSet& radii) {
  const std::size_t n = radii.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += digamma(static_cast<double>(radii.n_x[i]) + 1.0) +
           digamma(static_cast<double>(radii.n_y[i]) + 1.0);
  }
  return digamma(static_cast<double>(n)) + digamma(static_cast<double>(radii.k)) -
         sum / static_cast<double>(n);
}

double relative_entropy_marginal(const RadiusSet& radii, const ScaledRadii& scaled, std::size_t dim,
                                 Marginal which) {
  const auto& counts = which == Marginal::X ? radii.n_x : radii.n_y;
  return -mean_digamma_of_counts(counts) + digamma(static_cast<double>(radii.size())) +
         static_cast<double>(dim) * scaled.mean_ln_epsilon_tilde;
}

double relative_entropy_joint(const RadiusSet& radii, const ScaledRadii& scaled, std::size_t dx,
                              std::size_t dy) {
  return -digamma(static_cast<double>(radii.k)) + digamma(static_cast<double>(radii.size())) +
         static_cast<double>(dx + dy) * scaled.mean_ln_epsilon_tilde;
}

NmiResult nmi(double mi, double h_x, double h_y) {
  NmiResult result{std::nullopt, h_x, h_y};
  const double product = h_x * h_y;
  if (product > 0.0 && std::isfinite(product) && std::isfinite(mi)) {
    result.value = mi / std::sqrt(product);
  }
  return result;
}

EstimateReport estimate_from_radii(const RadiusSet& radii, std::size_t dx, std::size_t dy,
                                   Backend backend) {
  if (dx == 0 || dy == 0) {
    throw ConfigError("estimate: both marginals need at least one dimension");
  }
  if (radii.size() == 0 || radii.n_x.size() != radii.size() || radii.n_y.size() != radii.size()) {
    throw ConfigError("estimate: inconsistent radius set");
  }
  EstimateReport report;
  report.n_samples = radii.size();
  report.k = radii.k;
  report.mi_ksg = ksg_mi(radii);
  report.normalization = normalization_factor(radii.epsilon, dx + dy, backend);

  const ScaledRadii scaled = scale_radii(radii.epsilon, report.normalization);
  report.h_x = relative_entropy_marginal(radii, scaled, dx, Marginal::X);
  report.h_y = relative_entropy_marginal(radii, scaled, dy, Marginal::Y);
  report.h_xy = relative_entropy_joint(radii, scaled, dx, dy);
  report.mi_from_entropies = report.h_x + report.h_y - report.h_xy;
  report.nmi = nmi(report.mi_from_entropies, report.h_x, report.h_y).value;
  return report;
}

EstimateReport estimate(const Dataset& data, std::size_t k, Backend backend,
                        const KnnOptions& options) {
  if (data.dx() == 0 || data.dy() == 0) {
    throw ConfigError("estimate: both marginals need at least one dimension");
  }
  const RadiusSet radii = compute_knn_radii(data, k, options);
  return estimate_from_radii(radii, data.dx(), data.dy(), backend);
}

}  // namespace stablenmi
