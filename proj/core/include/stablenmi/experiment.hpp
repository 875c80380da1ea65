#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stablenmi/radius_scaling.hpp"

namespace stablenmi {

enum class Family { Gaussian, StudentT };

std::string_view to_string(Family family) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;

struct ExperimentConfig {
  Family family = Family::Gaussian;
  std::vector<std::size_t> dims;
  /// Correlations for the Gaussian family. 1.0 is allowed: data is generated at
  /// kGaussianEndpointSubstitute while the truth stays capped at 1.
  std::vector<double> rho_grid;
  /// Degrees of freedom for the Student-t family.
  std::vector<double> nu_grid;
  std::size_t n = 10000;
  std::size_t k = 5;
  std::size_t repetitions = 10;
  std::uint64_t base_seed = 0;
  std::vector<Backend> backends{Backend::Baseline, Backend::Proposed};
  /// Cells evaluated concurrently. Output order never depends on this.
  unsigned workers = 1;

  /// rho_grid or nu_grid, depending on the family.
  const std::vector<double>& grid() const noexcept;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;

  /// Full default grids: N = 10000, k = 5, 10 repetitions,
  /// rho in {0, 0.1, ..., 1} with d in {1, 2, ..., 512} for Gaussian data and
  /// nu in {0.125, 0.25, 0.5, 1, 2, 5, 10} with d in {1, ..., 32} for Student-t data.
  static ExperimentConfig defaults(Family family);
};

inline constexpr double kGaussianEndpointSubstitute = 0.99;

/// Grid value actually used to generate data (differs only for Gaussian rho = 1).
double generation_parameter(Family family, double grid_value) noexcept;

/// Parses the JSON config format; field names match ExperimentConfig. Missing
/// fields take the family defaults; unknown fields are rejected with ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& config);

enum class RunStatus { Ok, Overflow, UndefinedNmi, DuplicatePoints };

std::string_view to_string(RunStatus status) noexcept;
std::optional<RunStatus> parse_status(std::string_view name) noexcept;

/// One (cell, repetition, backend) estimate. Estimate fields are empty when they
/// could not be computed or came out non-finite.
struct RunRecord {
  Family family = Family::Gaussian;
  std::size_t d = 0;
  double param = 0.0;
  double gen_param = 0.0;
  std::size_t repetition = 0;
  Backend backend = Backend::Proposed;
  std::uint64_t seed = 0;
  std::uint64_t dataset_checksum = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  RunStatus status = RunStatus::Ok;
  std::optional<double> ln_v;
  std::optional<double> epsilon_max;
  std::optional<double> mi_ksg;
  std::optional<double> h_x;
  std::optional<double> h_y;
  std::optional<double> h_xy;
  std::optional<double> mi_from_entropies;
  std::optional<double> nmi;
  std::optional<double> nmi_true;
  std::optional<double> mi_true;
  std::optional<double> h_true;
  double wall_time_ms = 0.0;
};

/// Seed for one cell repetition; a stable hash of its coordinates.
std::uint64_t cell_seed(std::uint64_t base_seed, Family family, std::size_t d, double grid_value,
                        std::size_t repetition) noexcept;

using ProgressCallback = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every (dim, grid value, repetition) cell and every backend on the same
/// dataset. Records are ordered by dim, grid value, repetition, then backend in
/// config order. Overflow and duplicate points are recorded, never thrown.
std::vector<RunRecord> run_sweep(const ExperimentConfig& config,
                                 const ProgressCallback& progress = {});

struct SummaryRow {
  Family family = Family::Gaussian;
  std::size_t d = 0;
  double param = 0.0;
  Backend backend = Backend::Proposed;
  std::size_t runs = 0;
  std::size_t ok_count = 0;
  std::optional<double> nmi_mean;
  /// Sample standard deviation (divisor n - 1); empty with fewer than two ok runs.
  std::optional<double> nmi_sd;
  std::optional<double> nmi_true;
  std::size_t overflow_count = 0;
  std::size_t undefined_count = 0;
  std::size_t duplicate_count = 0;
};

/// Groups records by (family, d, param, backend) in first-appearance order.
std::vector<SummaryRow> summarize(std::span<const RunRecord> records);

struct StabilityRow {
  std::size_t joint_dim = 0;
  Backend backend = Backend::Proposed;
  double ln_v = 0.0;
  bool finite = false;
};

/// Evaluates all three backends on a fixed radius vector at each joint dimension.
std::vector<StabilityRow> stability_profile(std::span<const double> epsilon,
                                            std::span<const std::size_t> joint_dims);

/// Powers of two from 2 to 4096.
std::vector<std::size_t> default_stability_dims();

}  // namespace stablenmi
