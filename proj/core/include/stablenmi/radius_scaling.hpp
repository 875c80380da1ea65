#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace stablenmi {

/// How the normalization factor V = <eps^D>^(1/D) is evaluated.
enum class Backend {
  /// Literal linear-domain power mean; overflows once eps_max^D leaves double range.
  Baseline,
  /// Log domain with eps_max factored out, so every powered ratio lies in [0, 1].
  Proposed,
  /// High-dimension limit ln V -> ln eps_max.
  DominantTerm,
};

std::string_view to_string(Backend backend) noexcept;
std::optional<Backend> parse_backend(std::string_view name) noexcept;

struct NormalizationResult {
  double ln_v = 0.0;
  Backend backend = Backend::Proposed;
  /// True iff ln_v is a finite real.
  bool finite = false;
  double epsilon_max = 0.0;
  /// Joint dimensionality dx + dy used as the power.
  std::size_t joint_dim = 0;
};

/// Radii divided by V, plus the mean of their logarithms.
struct ScaledRadii {
  std::vector<double> epsilon_tilde;
  double mean_ln_epsilon_tilde = 0.0;
};

// All three backends require a non-empty vector of positive finite radii and D >= 1;
// they throw ConfigError for an empty vector or D == 0 and DomainError for a bad radius.
// Only the baseline can return finite == false.

/// ln((sum_i eps_i^D / N)^(1/D)) evaluated with linear-domain powers.
NormalizationResult ln_v_baseline(std::span<const double> epsilon, std::size_t joint_dim);

/// ln eps_max + (1/D) ln(sum_i (eps_i / eps_max)^D / N).
NormalizationResult ln_v_proposed(std::span<const double> epsilon, std::size_t joint_dim);

/// ln eps_max.
NormalizationResult ln_v_dominant(std::span<const double> epsilon, std::size_t joint_dim);

NormalizationResult normalization_factor(std::span<const double> epsilon, std::size_t joint_dim,
                                         Backend backend);

/// eps_tilde_i = exp(ln eps_i - ln V), formed in the log domain.
/// Throws NonFiniteNormalizationError when norm.finite is false.
ScaledRadii scale_radii(std::span<const double> epsilon, const NormalizationResult& norm);

}  // namespace stablenmi
