#pragma once

#include <cstddef>
#include <optional>

#include "stablenmi/dataset.hpp"
#include "stablenmi/knn.hpp"
#include "stablenmi/radius_scaling.hpp"

namespace stablenmi {

enum class Marginal { X, Y };

/// NMI value, or nothing when h_x * h_y <= 0. The entropies are kept either way.
struct NmiResult {
  std::optional<double> value;
  double h_x = 0.0;
  double h_y = 0.0;

  bool defined() const noexcept { return value.has_value(); }
};

struct EstimateReport {
  double mi_ksg = 0.0;
  double h_x = 0.0;
  double h_y = 0.0;
  double h_xy = 0.0;
  /// h_x + h_y - h_xy; this is the NMI numerator.
  double mi_from_entropies = 0.0;
  /// Not clamped to [0, 1]; empty when the entropy product is not positive.
  std::optional<double> nmi;
  NormalizationResult normalization;
  std::size_t n_samples = 0;
  std::size_t k = 0;
};

/// KSG mutual information: psi(N) + psi(k) - <psi(n_x + 1) + psi(n_y + 1)>.
double ksg_mi(const RadiusSet& radii);

/// -<psi(n + 1)> + psi(N) + d <ln eps_tilde>, with n the counts of the chosen marginal.
double relative_entropy_marginal(const RadiusSet& radii, const ScaledRadii& scaled, std::size_t dim,
                                 Marginal which);

/// -psi(k) + psi(N) + (dx + dy) <ln eps_tilde>.
double relative_entropy_joint(const RadiusSet& radii, const ScaledRadii& scaled, std::size_t dx,
                              std::size_t dy);

NmiResult nmi(double mi, double h_x, double h_y);

/// Full estimate from precomputed radii. Throws NonFiniteNormalizationError when the
/// chosen backend cannot represent V.
EstimateReport estimate_from_radii(const RadiusSet& radii, std::size_t dx, std::size_t dy,
                                   Backend backend);

/// compute_knn_radii followed by estimate_from_radii. Both marginals must be non-empty.
EstimateReport estimate(const Dataset& data, std::size_t k, Backend backend,
                        const KnnOptions& options = {});

}  // namespace stablenmi
