#include "stablenmi/records_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string_view>

#include <json.hpp>

#include "stablenmi/errors.hpp"
#include "stablenmi/format.hpp"
#include "stablenmi/rng.hpp"

namespace stablenmi {

const std::vector<std::string> kRecordColumns = {
    "family", "d",     "param",      "gen_param", "repetition", "backend",
    "seed",   "dataset_checksum",    "n",         "k",          "status",
    "ln_v",   "epsilon_max",         "mi_ksg",    "h_x",        "h_y",
    "h_xy",   "mi_from_entropies",   "nmi",       "nmi_true",   "mi_true",
    "h_true", "wall_time_ms"};

const std::vector<std::string> kSummaryColumns = {
    "family",   "d",        "param",    "backend",        "runs",
    "ok_count", "nmi_mean", "nmi_sd",   "nmi_true",       "overflow_count",
    "undefined_count",      "duplicate_count"};

const std::vector<std::string> kStabilityColumns = {"joint_dim", "backend", "ln_v", "finite"};

namespace {

std::string join(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  return line;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename Int>
Int parse_int(std::string_view text, const char* column) {
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string("records csv: bad integer in column ") + column);
  }
  return value;
}

std::optional<double> parse_optional(std::string_view text, const char* column) {
  if (text.empty()) return std::nullopt;
  auto value = parse_double(text);
  if (!value) throw ConfigError(std::string("records csv: bad number in column ") + column);
  return value;
}

double parse_required(std::string_view text, const char* column) {
  auto value = parse_optional(text, column);
  if (!value) throw ConfigError(std::string("records csv: missing value in column ") + column);
  return *value;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

void write_records_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << join(kRecordColumns) << '\n';
  for (const RunRecord& r : records) {
    out << join({std::string(to_string(r.family)), std::to_string(r.d), format_double(r.param),
                 format_double(r.gen_param), std::to_string(r.repetition),
                 std::string(to_string(r.backend)), std::to_string(r.seed),
                 std::to_string(r.dataset_checksum), std::to_string(r.n), std::to_string(r.k),
                 std::string(to_string(r.status)), format_optional(r.ln_v),
                 format_optional(r.epsilon_max), format_optional(r.mi_ksg),
                 format_optional(r.h_x), format_optional(r.h_y), format_optional(r.h_xy),
                 format_optional(r.mi_from_entropies), format_optional(r.nmi),
                 format_optional(r.nmi_true), format_optional(r.mi_true),
                 format_optional(r.h_true), format_double(r.wall_time_ms)})
        << '\n';
  }
}

std::vector<RunRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("records csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != join(kRecordColumns)) {
    throw ConfigError("records csv: header does not match the run-record column order");
  }
  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != kRecordColumns.size()) {
      throw ConfigError("records csv: row " + std::to_string(records.size() + 1) + " has " +
                        std::to_string(f.size()) + " fields");
    }
    RunRecord r;
    const auto family = parse_family(f[0]);
    const auto backend = parse_backend(f[5]);
    const auto status = parse_status(f[10]);
    if (!family || !backend || !status) {
      throw ConfigError("records csv: unknown family, backend or status in row " +
                        std::to_string(records.size() + 1));
    }
    r.family = *family;
    r.d = parse_int<std::size_t>(f[1], "d");
    r.param = parse_required(f[2], "param");
    r.gen_param = parse_required(f[3], "gen_param");
    r.repetition = parse_int<std::size_t>(f[4], "repetition");
    r.backend = *backend;
    r.seed = parse_int<std::uint64_t>(f[6], "seed");
    r.dataset_checksum = parse_int<std::uint64_t>(f[7], "dataset_checksum");
    r.n = parse_int<std::size_t>(f[8], "n");
    r.k = parse_int<std::size_t>(f[9], "k");
    r.status = *status;
    r.ln_v = parse_optional(f[11], "ln_v");
    r.epsilon_max = parse_optional(f[12], "epsilon_max");
    r.mi_ksg = parse_optional(f[13], "mi_ksg");
    r.h_x = parse_optional(f[14], "h_x");
    r.h_y = parse_optional(f[15], "h_y");
    r.h_xy = parse_optional(f[16], "h_xy");
    r.mi_from_entropies = parse_optional(f[17], "mi_from_entropies");
    r.nmi = parse_optional(f[18], "nmi");
    r.nmi_true = parse_optional(f[19], "nmi_true");
    r.mi_true = parse_optional(f[20], "mi_true");
    r.h_true = parse_optional(f[21], "h_true");
    r.wall_time_ms = parse_optional(f[22], "wall_time_ms").value_or(0.0);
    records.push_back(r);
  }
  return records;
}

void write_records_jsonl(std::ostream& out, std::span<const RunRecord> records) {
  for (const RunRecord& r : records) {
    nlohmann::ordered_json j;
    j["family"] = to_string(r.family);
    j["d"] = r.d;
    j["param"] = r.param;
    j["gen_param"] = r.gen_param;
    j["repetition"] = r.repetition;
    j["backend"] = to_string(r.backend);
    j["seed"] = r.seed;
    j["dataset_checksum"] = r.dataset_checksum;
    j["n"] = r.n;
    j["k"] = r.k;
    j["status"] = to_string(r.status);
    j["ln_v"] = optional_json(r.ln_v);
    j["epsilon_max"] = optional_json(r.epsilon_max);
    j["mi_ksg"] = optional_json(r.mi_ksg);
    j["h_x"] = optional_json(r.h_x);
    j["h_y"] = optional_json(r.h_y);
    j["h_xy"] = optional_json(r.h_xy);
    j["mi_from_entropies"] = optional_json(r.mi_from_entropies);
    j["nmi"] = optional_json(r.nmi);
    j["nmi_true"] = optional_json(r.nmi_true);
    j["mi_true"] = optional_json(r.mi_true);
    j["h_true"] = optional_json(r.h_true);
    j["wall_time_ms"] = r.wall_time_ms;
    out << j.dump() << '\n';
  }
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << join(kSummaryColumns) << '\n';
  for (const SummaryRow& r : rows) {
    out << join({std::string(to_string(r.family)), std::to_string(r.d), format_double(r.param),
                 std::string(to_string(r.backend)), std::to_string(r.runs),
                 std::to_string(r.ok_count), format_optional(r.nmi_mean),
                 format_optional(r.nmi_sd), format_optional(r.nmi_true),
                 std::to_string(r.overflow_count), std::to_string(r.undefined_count),
                 std::to_string(r.duplicate_count)})
        << '\n';
  }
}

void write_stability_csv(std::ostream& out, std::span<const StabilityRow> rows) {
  out << join(kStabilityColumns) << '\n';
  for (const StabilityRow& r : rows) {
    out << join({std::to_string(r.joint_dim), std::string(to_string(r.backend)),
                 r.finite ? format_double(r.ln_v) : std::string(),
                 r.finite ? "true" : "false"})
        << '\n';
  }
}

void write_sweep_metadata(std::ostream& out, const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["generator"] = kGeneratorId;
  j["seed_derivation"] = "splitmix64 chain over (base_seed, family, d, bits(param), repetition)";
  j["config"] = nlohmann::json::parse(config_to_json(config));
  j["columns"] = kRecordColumns;
  nlohmann::json notes = nlohmann::json::array();
  if (config.family == Family::Gaussian) {
    for (double rho : config.rho_grid) {
      if (generation_parameter(config.family, rho) != rho) {
        notes.push_back("rho = " + format_double(rho) + " is generated with rho = " +
                        format_double(generation_parameter(config.family, rho)) +
                        "; nmi_true stays capped at 1");
      }
    }
  }
  j["notes"] = notes;
  out << j.dump(2) << '\n';
}

}  // namespace stablenmi
