#include "stablenmi/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "stablenmi/errors.hpp"
#include "stablenmi/estimators.hpp"
#include "stablenmi/ground_truth.hpp"
#include "stablenmi/knn.hpp"
#include "stablenmi/rng.hpp"
#include "stablenmi/synthetic.hpp"

namespace stablenmi {
namespace {

using Json = nlohmann::json;

std::optional<double> finite_or_empty(double value) {
  if (std::isfinite(value)) return value;
  return std::nullopt;
}

Dataset generate_cell(Family family, std::size_t d, double gen_param, std::size_t n,
                      std::uint64_t seed) {
  if (family == Family::Gaussian) {
    return generate_gaussian(GaussianSpec{d, gen_param, n, seed});
  }
  return generate_student_t(StudentTSpec{d, gen_param, n, seed});
}

TruthRecord truth_for(Family family, std::size_t d, double param) {
  if (family == Family::Gaussian) return gaussian_truth(d, param);
  return student_t_truth(d, param, 0.0);
}

void fill_estimate(RunRecord& record, const RadiusSet& radii, std::size_t d) {
  EstimateReport report;
  try {
    report = estimate_from_radii(radii, d, d, record.backend);
  } catch (const NonFiniteNormalizationError&) {
    const auto norm = normalization_factor(radii.epsilon, 2 * d, record.backend);
    record.status = RunStatus::Overflow;
    record.epsilon_max = finite_or_empty(norm.epsilon_max);
    record.mi_ksg = finite_or_empty(ksg_mi(radii));
    return;
  }
  record.ln_v = finite_or_empty(report.normalization.ln_v);
  record.epsilon_max = finite_or_empty(report.normalization.epsilon_max);
  record.mi_ksg = finite_or_empty(report.mi_ksg);
  record.h_x = finite_or_empty(report.h_x);
  record.h_y = finite_or_empty(report.h_y);
  record.h_xy = finite_or_empty(report.h_xy);
  record.mi_from_entropies = finite_or_empty(report.mi_from_entropies);
  record.nmi = report.nmi ? finite_or_empty(*report.nmi) : std::nullopt;

  const bool all_finite = record.ln_v && record.h_x && record.h_y && record.h_xy &&
                          record.mi_from_entropies;
  if (!all_finite) {
    record.status = RunStatus::Overflow;
  } else if (!record.nmi) {
    record.status = RunStatus::UndefinedNmi;
  } else {
    record.status = RunStatus::Ok;
  }
}

Json config_json(const ExperimentConfig& config) {
  Json backends = Json::array();
  for (Backend b : config.backends) backends.push_back(std::string(to_string(b)));
  Json j;
  j["family"] = std::string(to_string(config.family));
  j["dims"] = config.dims;
  if (config.family == Family::Gaussian) {
    j["rho_grid"] = config.rho_grid;
  } else {
    j["nu_grid"] = config.nu_grid;
  }
  j["n"] = config.n;
  j["k"] = config.k;
  j["repetitions"] = config.repetitions;
  j["base_seed"] = config.base_seed;
  j["backends"] = backends;
  j["workers"] = config.workers;
  return j;
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  return family == Family::Gaussian ? "gaussian" : "student_t";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  if (name == "gaussian") return Family::Gaussian;
  if (name == "student_t" || name == "student-t") return Family::StudentT;
  return std::nullopt;
}

std::string_view to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::Ok:
      return "ok";
    case RunStatus::Overflow:
      return "overflow";
    case RunStatus::UndefinedNmi:
      return "undefined_nmi";
    case RunStatus::DuplicatePoints:
      return "duplicate_points";
  }
  return "unknown";
}

std::optional<RunStatus> parse_status(std::string_view name) noexcept {
  if (name == "ok") return RunStatus::Ok;
  if (name == "overflow") return RunStatus::Overflow;
  if (name == "undefined_nmi") return RunStatus::UndefinedNmi;
  if (name == "duplicate_points") return RunStatus::DuplicatePoints;
  return std::nullopt;
}

const std::vector<double>& ExperimentConfig::grid() const noexcept {
  return family == Family::Gaussian ? rho_grid : nu_grid;
}

void ExperimentConfig::validate() const {
  if (dims.empty()) throw ConfigError("config: dims must not be empty");
  for (std::size_t d : dims) {
    if (d == 0) throw ConfigError("config: every entry of dims must be positive");
  }
  if (grid().empty()) {
    throw ConfigError(family == Family::Gaussian ? "config: rho_grid must not be empty"
                                                 : "config: nu_grid must not be empty");
  }
  for (double v : grid()) {
    if (family == Family::Gaussian && !(v >= 0.0 && v <= 1.0)) {
      throw ConfigError("config: rho_grid values must lie in [0, 1]");
    }
    if (family == Family::StudentT && (!(v > 0.0) || !std::isfinite(v))) {
      throw ConfigError("config: nu_grid values must be positive and finite");
    }
  }
  if (k == 0) throw ConfigError("config: k must be positive");
  if (n <= k) throw ConfigError("config: n must exceed k");
  if (repetitions == 0) throw ConfigError("config: repetitions must be positive");
  if (backends.empty()) throw ConfigError("config: backends must not be empty");
  if (workers == 0) throw ConfigError("config: workers must be positive");
}

ExperimentConfig ExperimentConfig::defaults(Family family) {
  ExperimentConfig config;
  config.family = family;
  if (family == Family::Gaussian) {
    config.dims = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
    config.rho_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  } else {
    config.dims = {1, 2, 4, 8, 16, 32};
    config.nu_grid = {0.125, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0};
  }
  return config;
}

double generation_parameter(Family family, double grid_value) noexcept {
  if (family == Family::Gaussian && grid_value == 1.0) return kGaussianEndpointSubstitute;
  return grid_value;
}

ExperimentConfig parse_config(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

  static const char* const kKnown[] = {"family", "dims", "rho_grid", "nu_grid", "n", "k",
                                       "repetitions", "base_seed", "backends", "workers"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      throw ConfigError("config: unknown field '" + key + "'");
    }
  }
  if (!j.contains("family")) throw ConfigError("config: field 'family' is required");

  try {
    const auto family = parse_family(j.at("family").get<std::string>());
    if (!family) throw ConfigError("config: family must be 'gaussian' or 'student_t'");
    ExperimentConfig config = ExperimentConfig::defaults(*family);
    if (j.contains("dims")) config.dims = j.at("dims").get<std::vector<std::size_t>>();
    if (j.contains("rho_grid")) config.rho_grid = j.at("rho_grid").get<std::vector<double>>();
    if (j.contains("nu_grid")) config.nu_grid = j.at("nu_grid").get<std::vector<double>>();
    if (j.contains("n")) config.n = j.at("n").get<std::size_t>();
    if (j.contains("k")) config.k = j.at("k").get<std::size_t>();
    if (j.contains("repetitions")) config.repetitions = j.at("repetitions").get<std::size_t>();
    if (j.contains("base_seed")) config.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("workers")) config.workers = j.at("workers").get<unsigned>();
    if (j.contains("backends")) {
      config.backends.clear();
      for (const auto& name : j.at("backends").get<std::vector<std::string>>()) {
        const auto backend = parse_backend(name);
        if (!backend) throw ConfigError("config: unknown backend '" + name + "'");
        config.backends.push_back(*backend);
      }
    }
    config.validate();
    return config;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: wrong field type: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_to_json(const ExperimentConfig& config) { return config_json(config).dump(2); }

std::uint64_t cell_seed(std::uint64_t base_seed, Family family, std::size_t d, double grid_value,
                        std::size_t repetition) noexcept {
  return derive_seed({base_seed, static_cast<std::uint64_t>(family), d, double_bits(grid_value),
                      repetition});
}

std::vector<RunRecord> run_sweep(const ExperimentConfig& config, const ProgressCallback& progress) {
  config.validate();
  const auto& grid = config.grid();
  const std::size_t n_backends = config.backends.size();
  const std::size_t per_dim = grid.size() * config.repetitions;
  const std::size_t jobs = config.dims.size() * per_dim;

  std::vector<RunRecord> records(jobs * n_backends);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(config.workers, jobs));
  // A single worker lets the k-NN scan use every core instead.
  const KnnOptions knn_options{workers > 1 ? 1u : 0u};

  auto run_job = [&](std::size_t job) {
    const std::size_t d = config.dims[job / per_dim];
    const double param = grid[(job % per_dim) / config.repetitions];
    const std::size_t repetition = job % config.repetitions;
    const double gen_param = generation_parameter(config.family, param);
    const std::uint64_t seed = cell_seed(config.base_seed, config.family, d, param, repetition);
    const TruthRecord truth = truth_for(config.family, d, param);

    const auto start = std::chrono::steady_clock::now();
    const Dataset data = generate_cell(config.family, d, gen_param, config.n, seed);
    std::optional<RadiusSet> radii;
    try {
      radii = compute_knn_radii(data, config.k, knn_options);
    } catch (const DuplicatePointError&) {
    }
    const double knn_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    for (std::size_t b = 0; b < n_backends; ++b) {
      const auto backend_start = std::chrono::steady_clock::now();
      RunRecord& record = records[job * n_backends + b];
      record.family = config.family;
      record.d = d;
      record.param = param;
      record.gen_param = gen_param;
      record.repetition = repetition;
      record.backend = config.backends[b];
      record.seed = seed;
      record.dataset_checksum = data.checksum();
      record.n = config.n;
      record.k = config.k;
      record.nmi_true = truth.nmi_true;
      record.mi_true = finite_or_empty(truth.mi_true);
      record.h_true = finite_or_empty(truth.h_marginal_true);
      if (radii) {
        fill_estimate(record, *radii, d);
      } else {
        record.status = RunStatus::DuplicatePoints;
      }
      record.wall_time_ms =
          knn_ms + std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             backend_start)
                       .count();
    }
  };

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_job = jobs;
  std::mutex progress_mutex;

  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      try {
        run_job(job);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (job < first_error_job) {
          first_error_job = job;
          first_error = std::current_exception();
        }
      }
      const std::size_t finished = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, jobs);
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);
  return records;
}

std::vector<SummaryRow> summarize(std::span<const RunRecord> records) {
  struct Accumulator {
    SummaryRow row;
    std::vector<double> values;
  };
  std::vector<Accumulator> cells;
  std::unordered_map<std::string, std::size_t> index;

  for (const RunRecord& r : records) {
    const std::string key = std::string(to_string(r.family)) + '|' + std::to_string(r.d) + '|' +
                            std::to_string(double_bits(r.param)) + '|' +
                            std::string(to_string(r.backend));
    auto [it, inserted] = index.try_emplace(key, cells.size());
    if (inserted) {
      Accumulator acc;
      acc.row.family = r.family;
      acc.row.d = r.d;
      acc.row.param = r.param;
      acc.row.backend = r.backend;
      acc.row.nmi_true = r.nmi_true;
      cells.push_back(std::move(acc));
    }
    Accumulator& acc = cells[it->second];
    ++acc.row.runs;
    switch (r.status) {
      case RunStatus::Ok:
        if (r.nmi) {
          ++acc.row.ok_count;
          acc.values.push_back(*r.nmi);
        }
        break;
      case RunStatus::Overflow:
        ++acc.row.overflow_count;
        break;
      case RunStatus::UndefinedNmi:
        ++acc.row.undefined_count;
        break;
      case RunStatus::DuplicatePoints:
        ++acc.row.duplicate_count;
        break;
    }
  }

  std::vector<SummaryRow> rows;
  rows.reserve(cells.size());
  for (Accumulator& acc : cells) {
    const std::size_t m = acc.values.size();
    if (m > 0) {
      double sum = 0.0;
      for (double v : acc.values) sum += v;
      const double mean = sum / static_cast<double>(m);
      acc.row.nmi_mean = mean;
      if (m > 1) {
        double ss = 0.0;
        for (double v : acc.values) ss += (v - mean) * (v - mean);
        acc.row.nmi_sd = std::sqrt(ss / static_cast<double>(m - 1));
      }
    }
    rows.push_back(acc.row);
  }
  return rows;
}

std::vector<StabilityRow> stability_profile(std::span<const double> epsilon,
                                            std::span<const std::size_t> joint_dims) {
  std::vector<StabilityRow> rows;
  rows.reserve(joint_dims.size() * 3);
  for (std::size_t dim : joint_dims) {
    for (Backend backend : {Backend::Baseline, Backend::Proposed, Backend::DominantTerm}) {
      const auto norm = normalization_factor(epsilon, dim, backend);
      rows.push_back(StabilityRow{dim, backend, norm.ln_v, norm.finite});
    }
  }
  return rows;
}

std::vector<std::size_t> default_stability_dims() {
  std::vector<std::size_t> dims;
  for (std::size_t d = 2; d <= 4096; d *= 2) dims.push_back(d);
  return dims;
}

}  // namespace stablenmi
