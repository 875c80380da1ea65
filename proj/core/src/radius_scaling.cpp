#include "stablenmi/radius_scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stablenmi/errors.hpp"

namespace stablenmi {
namespace {

double validated_max(std::span<const double> epsilon, std::size_t joint_dim) {
  if (epsilon.empty()) {
    throw ConfigError("normalization: radius vector is empty");
  }
  if (joint_dim == 0) {
    throw ConfigError("normalization: joint dimensionality must be at least 1");
  }
  double max_radius = 0.0;
  for (std::size_t i = 0; i < epsilon.size(); ++i) {
    const double e = epsilon[i];
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw DomainError("normalization: radius " + std::to_string(i) +
                        " must be positive and finite, got " + std::to_string(e));
    }
    max_radius = std::max(max_radius, e);
  }
  return max_radius;
}

NormalizationResult make_result(double ln_v, Backend backend, double max_radius,
                                std::size_t joint_dim) {
  return NormalizationResult{ln_v, backend, std::isfinite(ln_v), max_radius, joint_dim};
}

}  // namespace

std::string_view to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::Baseline:
      return "baseline";
    case Backend::Proposed:
      return "proposed";
    case Backend::DominantTerm:
      return "dominant";
  }
  return "unknown";
}

std::optional<Backend> parse_backend(std::string_view name) noexcept {
  if (name == "baseline") return Backend::Baseline;
  if (name == "proposed") return Backend::Proposed;
  if (name == "dominant") return Backend::DominantTerm;
  return std::nullopt;
}

NormalizationResult ln_v_baseline(std::span<const double> epsilon, std::size_t joint_dim) {
  const double max_radius = validated_max(epsilon, joint_dim);
  const double power = static_cast<double>(joint_dim);
  double sum = 0.0;
  for (double e : epsilon) {
    sum += std::pow(e, power);
  }
  const double mean = sum / static_cast<double>(epsilon.size());
  const double v = std::pow(mean, 1.0 / power);
  return make_result(std::log(v), Backend::Baseline, max_radius, joint_dim);
}

NormalizationResult ln_v_proposed(std::span<const double> epsilon, std::size_t joint_dim) {
  const double max_radius = validated_max(epsilon, joint_dim);
  const double power = static_cast<double>(joint_dim);
  // Each ratio is in (0, 1] and the maximum contributes exactly 1, so sum >= 1.
  double sum = 0.0;
  for (double e : epsilon) {
    sum += std::pow(e / max_radius, power);
  }
  const double correction = std::log(sum / static_cast<double>(epsilon.size())) / power;
  return make_result(std::log(max_radius) + correction, Backend::Proposed, max_radius, joint_dim);
}

NormalizationResult ln_v_dominant(std::span<const double> epsilon, std::size_t joint_dim) {
  const double max_radius = validated_max(epsilon, joint_dim);
  return make_result(std::log(max_radius), Backend::DominantTerm, max_radius, joint_dim);
}

NormalizationResult normalization_factor(std::span<const double> epsilon, std::size_t joint_dim,
                                         Backend backend) {
  switch (backend) {
    case Backend::Baseline:
      return ln_v_baseline(epsilon, joint_dim);
    case Backend::Proposed:
      return ln_v_proposed(epsilon, joint_dim);
    case Backend::DominantTerm:
      return ln_v_dominant(epsilon, joint_dim);
  }
  throw ConfigError("normalization: unknown backend");
}

ScaledRadii scale_radii(std::span<const double> epsilon, const NormalizationResult& norm) {
  if (!norm.finite) {
    throw NonFiniteNormalizationError("normalization factor is not finite (ln V = " +
                                      std::to_string(norm.ln_v) + ", backend " +
                                      std::string(to_string(norm.backend)) +
                                      ", D = " + std::to_string(norm.joint_dim) + ")");
  }
  ScaledRadii scaled;
  scaled.epsilon_tilde.reserve(epsilon.size());
  double sum_ln = 0.0;
  for (double e : epsilon) {
    const double ln_tilde = std::log(e) - norm.ln_v;
    sum_ln += ln_tilde;
    scaled.epsilon_tilde.push_back(std::exp(ln_tilde));
  }
  scaled.mean_ln_epsilon_tilde = epsilon.empty() ? 0.0 : sum_ln / static_cast<double>(epsilon.size());
  return scaled;
}

}  // namespace stablenmi
