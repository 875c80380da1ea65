#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "stablenmi/errors.hpp"
#include "stablenmi/experiment.hpp"

using namespace stablenmi;

namespace {

ExperimentConfig small_gaussian() {
  ExperimentConfig c;
  c.family = Family::Gaussian;
  c.dims = {1, 3};
  c.rho_grid = {0.0, 0.8, 1.0};
  c.n = 250;
  c.k = 5;
  c.repetitions = 3;
  c.base_seed = 99;
  c.backends = {Backend::Baseline, Backend::Proposed, Backend::DominantTerm};
  return c;
}

RunRecord record_with(double nmi, RunStatus status) {
  RunRecord r;
  r.d = 2;
  r.param = 0.5;
  r.backend = Backend::Proposed;
  r.status = status;
  if (status == RunStatus::Ok) r.nmi = nmi;
  r.nmi_true = 0.1;
  return r;
}

}  // namespace

TEST(Config, DefaultGrids) {
  const auto g = ExperimentConfig::defaults(Family::Gaussian);
  EXPECT_EQ(g.n, 10000u);
  EXPECT_EQ(g.k, 5u);
  EXPECT_EQ(g.repetitions, 10u);
  EXPECT_EQ(g.dims.front(), 1u);
  EXPECT_EQ(g.dims.back(), 512u);
  EXPECT_EQ(g.rho_grid.size(), 11u);
  EXPECT_EQ(g.rho_grid.back(), 1.0);
  const auto t = ExperimentConfig::defaults(Family::StudentT);
  EXPECT_EQ(t.dims.back(), 32u);
  EXPECT_EQ(t.nu_grid.front(), 0.125);
  EXPECT_EQ(t.nu_grid.back(), 10.0);
  EXPECT_NO_THROW(g.validate());
  EXPECT_NO_THROW(t.validate());
}

TEST(Config, ParsesJsonAndFillsDefaults) {
  const auto c = parse_config(R"({"family": "student_t", "dims": [2, 4], "nu_grid": [0.5],
                                  "n": 500, "backends": ["proposed"], "base_seed": 3})");
  EXPECT_EQ(c.family, Family::StudentT);
  EXPECT_EQ(c.dims, (std::vector<std::size_t>{2, 4}));
  EXPECT_EQ(c.nu_grid, (std::vector<double>{0.5}));
  EXPECT_EQ(c.n, 500u);
  EXPECT_EQ(c.k, 5u);
  EXPECT_EQ(c.repetitions, 10u);
  EXPECT_EQ(c.backends, (std::vector<Backend>{Backend::Proposed}));
  EXPECT_EQ(c.base_seed, 3u);
  EXPECT_EQ(parse_config(config_to_json(c)).dims, c.dims);
}

TEST(Config, RejectsInvalidContent) {
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(parse_config(R"({"dims": [1]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"family": "cauchy"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"family": "gaussian", "colour": 1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"family": "gaussian", "rho_grid": [1.5]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"family": "student_t", "nu_grid": [0]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"family": "gaussian", "n": 5, "k": 5})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"family": "gaussian", "backends": ["fast"]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"family": "gaussian", "dims": "many"})"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), IoError);
}

TEST(Sweep, RecordLayoutAndDatasetSharing) {
  const auto config = small_gaussian();
  const auto records = run_sweep(config);
  ASSERT_EQ(records.size(), 2u * 3u * 3u * 3u);

  for (std::size_t i = 0; i < records.size(); i += 3) {
    const RunRecord& base = records[i];
    EXPECT_EQ(base.backend, Backend::Baseline);
    EXPECT_EQ(records[i + 1].backend, Backend::Proposed);
    EXPECT_EQ(records[i + 2].backend, Backend::DominantTerm);
    for (std::size_t b = 1; b < 3; ++b) {
      EXPECT_EQ(records[i + b].dataset_checksum, base.dataset_checksum);
      EXPECT_EQ(records[i + b].seed, base.seed);
      EXPECT_EQ(records[i + b].mi_ksg, base.mi_ksg);
    }
  }
  // First cell coordinates follow dims, then grid, then repetition.
  EXPECT_EQ(records[0].d, 1u);
  EXPECT_EQ(records[0].param, 0.0);
  EXPECT_EQ(records[3].repetition, 1u);
  EXPECT_EQ(records[9].param, 0.8);
  EXPECT_EQ(records.back().d, 3u);
  EXPECT_EQ(records.back().param, 1.0);
  EXPECT_EQ(records.back().gen_param, kGaussianEndpointSubstitute);
  EXPECT_EQ(*records.back().nmi_true, 1.0);

  std::set<std::uint64_t> seeds;
  for (const auto& r : records) seeds.insert(r.seed);
  EXPECT_EQ(seeds.size(), 2u * 3u * 3u);
}

TEST(Sweep, BaselineAndProposedAgreeWhenFinite) {
  const auto records = run_sweep(small_gaussian());
  for (std::size_t i = 0; i < records.size(); i += 3) {
    const RunRecord& base = records[i];
    const RunRecord& prop = records[i + 1];
    ASSERT_EQ(base.status, RunStatus::Ok);
    ASSERT_EQ(prop.status, RunStatus::Ok);
    EXPECT_NEAR(*base.nmi, *prop.nmi, 1e-9);
    EXPECT_NEAR(*base.h_xy, *prop.h_xy, 1e-9);
  }
}

TEST(Sweep, ReproducibleAcrossWorkerCounts) {
  auto config = small_gaussian();
  const auto a = run_sweep(config);
  config.workers = 4;
  const auto b = run_sweep(config);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].seed, b[i].seed);
    EXPECT_EQ(a[i].dataset_checksum, b[i].dataset_checksum);
    EXPECT_EQ(a[i].nmi, b[i].nmi);
    EXPECT_EQ(a[i].ln_v, b[i].ln_v);
    EXPECT_EQ(a[i].status, b[i].status);
  }
}

TEST(Sweep, BaselineOverflowIsRecorded) {
  ExperimentConfig c;
  c.family = Family::Gaussian;
  c.dims = {512};
  c.rho_grid = {0.5};
  c.n = 60;
  c.repetitions = 2;
  c.backends = {Backend::Baseline, Backend::Proposed};
  const auto records = run_sweep(c);
  ASSERT_EQ(records.size(), 4u);
  for (std::size_t i = 0; i < 4; i += 2) {
    EXPECT_EQ(records[i].status, RunStatus::Overflow);
    EXPECT_FALSE(records[i].ln_v.has_value());
    EXPECT_FALSE(records[i].nmi.has_value());
    EXPECT_TRUE(records[i].mi_ksg.has_value());
    EXPECT_EQ(records[i + 1].status, RunStatus::Ok);
    EXPECT_TRUE(records[i + 1].nmi.has_value());
  }
}

TEST(Sweep, StudentTFamilyCarriesTruth) {
  ExperimentConfig c = ExperimentConfig::defaults(Family::StudentT);
  c.dims = {2};
  c.nu_grid = {0.5, 5.0};
  c.n = 200;
  c.repetitions = 1;
  c.backends = {Backend::Proposed};
  const auto records = run_sweep(c);
  ASSERT_EQ(records.size(), 2u);
  for (const auto& r : records) {
    EXPECT_EQ(r.family, Family::StudentT);
    EXPECT_EQ(r.gen_param, r.param);
    EXPECT_TRUE(r.mi_true.has_value());
    EXPECT_GT(*r.mi_true, 0.0);
  }
}

TEST(Summarize, MeanAndSampleStandardDeviation) {
  std::vector<RunRecord> same(10, record_with(0.25, RunStatus::Ok));
  auto rows = summarize(same);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].runs, 10u);
  EXPECT_EQ(rows[0].ok_count, 10u);
  EXPECT_DOUBLE_EQ(*rows[0].nmi_mean, 0.25);
  EXPECT_EQ(*rows[0].nmi_sd, 0.0);
  EXPECT_EQ(*rows[0].nmi_true, 0.1);

  std::vector<RunRecord> overflow(10, record_with(0.0, RunStatus::Overflow));
  rows = summarize(overflow);
  EXPECT_FALSE(rows[0].nmi_mean.has_value());
  EXPECT_EQ(rows[0].overflow_count, 10u);

  std::vector<RunRecord> mixed = {record_with(1.0, RunStatus::Ok), record_with(2.0, RunStatus::Ok),
                                  record_with(3.0, RunStatus::Ok),
                                  record_with(0.0, RunStatus::UndefinedNmi),
                                  record_with(0.0, RunStatus::DuplicatePoints)};
  rows = summarize(mixed);
  EXPECT_EQ(rows[0].ok_count, 3u);
  EXPECT_DOUBLE_EQ(*rows[0].nmi_mean, 2.0);
  EXPECT_DOUBLE_EQ(*rows[0].nmi_sd, 1.0);
  EXPECT_EQ(rows[0].undefined_count, 1u);
  EXPECT_EQ(rows[0].duplicate_count, 1u);

  rows = summarize(std::vector<RunRecord>{record_with(0.4, RunStatus::Ok)});
  EXPECT_FALSE(rows[0].nmi_sd.has_value());
}

TEST(Summarize, GroupsByCellAndBackend) {
  auto a = record_with(0.1, RunStatus::Ok);
  auto b = a;
  b.backend = Backend::Baseline;
  auto c = a;
  c.d = 4;
  const auto rows = summarize(std::vector<RunRecord>{a, b, c, a});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].runs, 2u);
  EXPECT_EQ(rows[1].backend, Backend::Baseline);
  EXPECT_EQ(rows[2].d, 4u);
}

TEST(Stability, BaselineStopsAtOverflowDimension) {
  const std::vector<double> eps = {1.0, 2.0};
  const auto dims = default_stability_dims();
  EXPECT_EQ(dims.front(), 2u);
  EXPECT_EQ(dims.back(), 4096u);
  const auto rows = stability_profile(eps, dims);
  ASSERT_EQ(rows.size(), dims.size() * 3);
  for (const auto& row : rows) {
    if (row.backend == Backend::Baseline) {
      EXPECT_EQ(row.finite, row.joint_dim < 1024) << "D = " << row.joint_dim;
    } else {
      EXPECT_TRUE(row.finite);
    }
  }
  const std::vector<std::size_t> edge = {1023, 1024};
  const auto at_edge = stability_profile(eps, edge);
  EXPECT_TRUE(at_edge[0].finite);
  EXPECT_FALSE(at_edge[3].finite);
}

TEST(Stability, EqualRadiiGiveIdenticalBackends) {
  const std::vector<double> eps(7, 3.5);
  const std::vector<std::size_t> dims = {1, 10, 100};
  const auto rows = stability_profile(eps, dims);
  for (std::size_t i = 0; i < rows.size(); i += 3) {
    EXPECT_NEAR(rows[i].ln_v, std::log(3.5), 1e-14);
    EXPECT_NEAR(rows[i + 1].ln_v, std::log(3.5), 1e-15);
    EXPECT_EQ(rows[i + 2].ln_v, std::log(3.5));
  }
}

TEST(Stability, ConvergesToDominantTerm) {
  const std::vector<double> eps = {1.0, 2.0};
  const std::vector<std::size_t> dims = {1000000};
  const auto rows = stability_profile(eps, dims);
  EXPECT_LE(std::abs(rows[1].ln_v - std::log(2.0)), 1e-5);
}
