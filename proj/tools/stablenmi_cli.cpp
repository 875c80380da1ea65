// stablenmi: experiment driver for k-NN normalized mutual information.
//
//   stablenmi sweep --config cfg.json --out records.csv [--jsonl records.jsonl]
//   stablenmi summarize --in records.csv --out summary.csv
//   stablenmi stability [--radii 1,2] [--dims 2,4,8] [--out table.csv]
//   stablenmi gen --family gaussian --d 4 --rho 0.5 --n 10000 --seed 7 --out data.csv
//   stablenmi estimate --in data.csv --dx 4 --dy 4 --k 5 --backend proposed
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 internal error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablenmi/errors.hpp"
#include "stablenmi/estimators.hpp"
#include "stablenmi/experiment.hpp"
#include "stablenmi/format.hpp"
#include "stablenmi/records_io.hpp"
#include "stablenmi/rng.hpp"
#include "stablenmi/synthetic.hpp"

namespace {

using namespace stablenmi;

enum ExitCode : int { kOk = 0, kConfig = 1, kIo = 2, kInternal = 3 };

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

// Writes to the file when a path is given, stdout otherwise.
template <typename Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  auto out = open_output(path);
  write(out);
  finish(out, path);
}

struct SweepArgs {
  std::string config;
  std::string out;
  std::string jsonl;
  std::string metadata;
  unsigned workers = 0;
  bool quiet = false;
};

int run_sweep_command(const SweepArgs& args) {
  ExperimentConfig config = load_config(args.config);
  if (args.workers) config.workers = args.workers;
  ProgressCallback progress;
  if (!args.quiet) {
    progress = [](std::size_t done, std::size_t total) {
      std::cerr << "\r[sweep] " << done << "/" << total << " cells" << std::flush;
      if (done == total) std::cerr << '\n';
    };
  }
  const auto records = run_sweep(config, progress);
  emit(args.out, [&](std::ostream& os) { write_records_csv(os, records); });
  if (!args.jsonl.empty()) {
    emit(args.jsonl, [&](std::ostream& os) { write_records_jsonl(os, records); });
  }
  std::string meta = args.metadata;
  if (meta.empty() && !args.out.empty() && args.out != "-") meta = args.out + ".meta.json";
  if (!meta.empty()) {
    emit(meta, [&](std::ostream& os) { write_sweep_metadata(os, config); });
  }
  return kOk;
}

struct StabilityArgs {
  std::vector<double> radii{1.0, 2.0};
  std::vector<std::size_t> dims;
  std::size_t random_n = 0;
  double low = 0.1;
  double high = 10.0;
  std::uint64_t seed = 1;
  std::string out;
};

int run_stability_command(const StabilityArgs& args) {
  std::vector<double> radii = args.radii;
  if (args.random_n > 0) {
    if (!(args.low > 0.0 && args.high > args.low)) {
      throw ConfigError("stability: need 0 < --low < --high");
    }
    Rng rng(args.seed);
    radii.clear();
    const double span = std::log(args.high) - std::log(args.low);
    for (std::size_t i = 0; i < args.random_n; ++i) {
      radii.push_back(std::exp(std::log(args.low) + span * rng.uniform_open()));
    }
  }
  const auto dims = args.dims.empty() ? default_stability_dims() : args.dims;
  const auto rows = stability_profile(radii, dims);
  emit(args.out, [&](std::ostream& os) { write_stability_csv(os, rows); });
  return kOk;
}

struct GenArgs {
  std::string family = "gaussian";
  std::size_t d = 1;
  double rho = 0.0;
  double nu = 1.0;
  std::size_t n = 10000;
  std::uint64_t seed = 0;
  std::uint64_t shuffle_seed = 0;
  bool shuffle = false;
  std::string out;
};

int run_gen_command(const GenArgs& args) {
  const auto family = parse_family(args.family);
  if (!family) throw ConfigError("gen: --family must be gaussian or student_t");
  Dataset data = *family == Family::Gaussian
                     ? generate_gaussian(GaussianSpec{args.d, args.rho, args.n, args.seed})
                     : generate_student_t(StudentTSpec{args.d, args.nu, args.n, args.seed});
  if (args.shuffle) data = shuffle_y(data, args.shuffle_seed);
  emit(args.out, [&](std::ostream& os) { write_dataset_csv(os, data); });
  return kOk;
}

struct EstimateArgs {
  std::string in;
  std::size_t dx = 1;
  std::size_t dy = 1;
  std::size_t k = 5;
  std::string backend = "proposed";
  unsigned threads = 0;
};

int run_estimate_command(const EstimateArgs& args) {
  const auto backend = parse_backend(args.backend);
  if (!backend) throw ConfigError("estimate: --backend must be baseline, proposed or dominant");
  auto in = open_input(args.in);
  const Dataset data = read_dataset_csv(in, args.dx, args.dy);

  const RadiusSet radii = compute_knn_radii(data, args.k, KnnOptions{args.threads});
  nlohmann::ordered_json j;
  j["n"] = data.size();
  j["dx"] = data.dx();
  j["dy"] = data.dy();
  j["k"] = args.k;
  j["backend"] = to_string(*backend);
  try {
    const EstimateReport report = estimate_from_radii(radii, data.dx(), data.dy(), *backend);
    j["status"] = report.nmi ? "ok" : "undefined_nmi";
    j["ln_v"] = report.normalization.ln_v;
    j["epsilon_max"] = report.normalization.epsilon_max;
    j["mi_ksg"] = report.mi_ksg;
    j["h_x"] = report.h_x;
    j["h_y"] = report.h_y;
    j["h_xy"] = report.h_xy;
    j["mi_from_entropies"] = report.mi_from_entropies;
    j["nmi"] = report.nmi ? nlohmann::json(*report.nmi) : nlohmann::json(nullptr);
  } catch (const NonFiniteNormalizationError& e) {
    j["status"] = "overflow";
    j["mi_ksg"] = ksg_mi(radii);
    j["nmi"] = nullptr;
    j["detail"] = e.what();
  }
  std::cout << j.dump(2) << '\n';
  return kOk;
}

int run_summarize_command(const std::string& in_path, const std::string& out_path) {
  auto in = open_input(in_path);
  const auto records = read_records_csv(in);
  const auto rows = summarize(records);
  emit(out_path, [&](std::ostream& os) { write_summary_csv(os, rows); });
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-NN normalized mutual information with a log-domain radius normalization"};
  app.require_subcommand(1);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment sweep from a JSON config");
  sweep_cmd->add_option("--config", sweep.config, "Config file")->required();
  sweep_cmd->add_option("--out", sweep.out, "Run-record CSV (default stdout)");
  sweep_cmd->add_option("--jsonl", sweep.jsonl, "Optional JSON-lines mirror of the records");
  sweep_cmd->add_option("--metadata", sweep.metadata, "Metadata JSON (default <out>.meta.json)");
  sweep_cmd->add_option("--workers", sweep.workers, "Override the config's worker count");
  sweep_cmd->add_flag("--quiet", sweep.quiet, "No progress output");

  std::string summarize_in;
  std::string summarize_out;
  auto* summarize_cmd = app.add_subcommand("summarize", "Aggregate run records per cell");
  summarize_cmd->add_option("--in", summarize_in, "Run-record CSV")->required();
  summarize_cmd->add_option("--out", summarize_out, "Summary CSV (default stdout)");

  StabilityArgs stability;
  auto* stability_cmd =
      app.add_subcommand("stability", "ln V of all backends over joint dimensions");
  stability_cmd->add_option("--radii", stability.radii, "Fixed radius vector")->delimiter(',');
  stability_cmd->add_option("--dims", stability.dims, "Joint dimensions (default 2,4,...,4096)")
      ->delimiter(',');
  stability_cmd->add_option("--random-n", stability.random_n,
                            "Draw this many log-uniform radii instead of --radii");
  stability_cmd->add_option("--low", stability.low, "Lower bound for random radii");
  stability_cmd->add_option("--high", stability.high, "Upper bound for random radii");
  stability_cmd->add_option("--seed", stability.seed, "Seed for random radii");
  stability_cmd->add_option("--out", stability.out, "Output CSV (default stdout)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic dataset as CSV");
  gen_cmd->add_option("--family", gen.family, "gaussian or student_t");
  gen_cmd->add_option("--d", gen.d, "Dimension of each marginal");
  gen_cmd->add_option("--rho", gen.rho, "Componentwise correlation (gaussian)");
  gen_cmd->add_option("--nu", gen.nu, "Degrees of freedom (student_t)");
  gen_cmd->add_option("--n", gen.n, "Sample count");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  auto* shuffle_opt =
      gen_cmd->add_option("--shuffle-y", gen.shuffle_seed, "Permute Y rows with this seed");
  gen_cmd->add_option("--out", gen.out, "Output CSV (default stdout)");

  EstimateArgs est;
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate NMI of a CSV dataset");
  estimate_cmd->add_option("--in", est.in, "Dataset CSV")->required();
  estimate_cmd->add_option("--dx", est.dx, "Columns belonging to X")->required();
  estimate_cmd->add_option("--dy", est.dy, "Columns belonging to Y")->required();
  estimate_cmd->add_option("--k", est.k, "Neighbour count");
  estimate_cmd->add_option("--backend", est.backend, "baseline, proposed or dominant");
  estimate_cmd->add_option("--threads", est.threads, "k-NN threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*sweep_cmd) return run_sweep_command(sweep);
    if (*summarize_cmd) return run_summarize_command(summarize_in, summarize_out);
    if (*stability_cmd) return run_stability_command(stability);
    if (*gen_cmd) {
      gen.shuffle = shuffle_opt->count() > 0;
      return run_gen_command(gen);
    }
    if (*estimate_cmd) return run_estimate_command(est);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const DuplicatePointError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
