#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stablenmi/experiment.hpp"

namespace stablenmi {

// Run-record CSV columns, in order:
//   family,d,param,gen_param,repetition,backend,seed,dataset_checksum,n,k,status,
//   ln_v,epsilon_max,mi_ksg,h_x,h_y,h_xy,mi_from_entropies,nmi,nmi_true,mi_true,h_true,
//   wall_time_ms
// Floats use shortest round-trip formatting, missing values are empty fields and
// wall_time_ms is always last so it can be dropped for reproducibility checks.
extern const std::vector<std::string> kRecordColumns;
extern const std::vector<std::string> kSummaryColumns;
extern const std::vector<std::string> kStabilityColumns;

void write_records_csv(std::ostream& out, std::span<const RunRecord> records);

/// Throws ConfigError when the header or a row does not match kRecordColumns.
std::vector<RunRecord> read_records_csv(std::istream& in);

/// One JSON object per line with the same field names as the CSV; missing values are null.
void write_records_jsonl(std::ostream& out, std::span<const RunRecord> records);

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

void write_stability_csv(std::ostream& out, std::span<const StabilityRow> rows);

/// Sidecar metadata for a sweep: generator identity, the effective config, the
/// column order and notes about substituted generation parameters.
void write_sweep_metadata(std::ostream& out, const ExperimentConfig& config);

}  // namespace stablenmi
