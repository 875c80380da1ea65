#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "stablenmi/errors.hpp"
#include "stablenmi/radius_scaling.hpp"
#include "test_support.hpp"

using namespace stablenmi;

namespace {

const std::vector<double> kEqual = {2.0, 2.0, 2.0};
const std::vector<double> kOneTwo = {1.0, 2.0};
const std::vector<double> kWide = {1000.0, 500.0};

// ln sqrt(5/2) and the D = 512 reference for {1000, 500}, both from mpmath.
constexpr double kLnVOneTwo = 0.45814536593707753259;
constexpr double kLnVWide512 = 6.9064014758951059089;

double tolerance(double value) { return 1e-10 * std::max(1.0, std::abs(value)); }

}  // namespace

TEST(LnVBaseline, WorkedExamples) {
  auto r = ln_v_baseline(kEqual, 7);
  EXPECT_TRUE(r.finite);
  EXPECT_NEAR(r.ln_v, std::log(2.0), 1e-15);
  EXPECT_EQ(r.backend, Backend::Baseline);
  EXPECT_EQ(r.epsilon_max, 2.0);
  EXPECT_EQ(r.joint_dim, 7u);

  r = ln_v_baseline(kOneTwo, 2);
  EXPECT_TRUE(r.finite);
  EXPECT_NEAR(r.ln_v, kLnVOneTwo, 1e-15);
}

TEST(LnVBaseline, OverflowIsFlaggedNotThrown) {
  const auto r = ln_v_baseline(kWide, 512);
  EXPECT_FALSE(r.finite);
  EXPECT_TRUE(std::isinf(r.ln_v));
  EXPECT_EQ(r.epsilon_max, 1000.0);
}

TEST(LnVBaseline, UnderflowIsFlagged) {
  const std::vector<double> tiny = {1e-3, 2e-3};
  const auto r = ln_v_baseline(tiny, 512);
  EXPECT_FALSE(r.finite);
  EXPECT_LT(r.ln_v, 0.0);
  EXPECT_TRUE(ln_v_proposed(tiny, 512).finite);
}

TEST(LnVProposed, WorkedExamples) {
  auto r = ln_v_proposed(kEqual, 7);
  EXPECT_TRUE(r.finite);
  EXPECT_DOUBLE_EQ(r.ln_v, std::log(2.0));

  r = ln_v_proposed(kOneTwo, 2);
  EXPECT_NEAR(r.ln_v, kLnVOneTwo, 1e-15);
  EXPECT_NEAR(r.ln_v, std::log(2.0) + 0.5 * std::log(0.625), 1e-15);

  r = ln_v_proposed(kWide, 512);
  EXPECT_TRUE(r.finite);
  EXPECT_NEAR(r.ln_v, kLnVWide512, 1e-13);
}

TEST(LnVDominant, IsLogOfMaximum) {
  EXPECT_DOUBLE_EQ(ln_v_dominant(kEqual, 3).ln_v, std::log(2.0));
  EXPECT_DOUBLE_EQ(ln_v_dominant(kOneTwo, 2).ln_v, std::log(2.0));
  const auto wide = ln_v_dominant(kWide, 1000000);
  EXPECT_DOUBLE_EQ(wide.ln_v, std::log(1000.0));
  EXPECT_LE(std::abs(ln_v_proposed(kWide, 1000000).ln_v - wide.ln_v), std::log(2.0) / 1e6);
}

TEST(LnV, ValidatesInput) {
  const std::vector<double> empty;
  for (Backend b : {Backend::Baseline, Backend::Proposed, Backend::DominantTerm}) {
    EXPECT_THROW(normalization_factor(empty, 2, b), ConfigError);
    EXPECT_THROW(normalization_factor(kOneTwo, 0, b), ConfigError);
    EXPECT_THROW(normalization_factor(std::vector<double>{1.0, 0.0}, 2, b), DomainError);
    EXPECT_THROW(normalization_factor(std::vector<double>{1.0, -2.0}, 2, b), DomainError);
    EXPECT_THROW(
        normalization_factor(std::vector<double>{1.0, std::numeric_limits<double>::infinity()}, 2, b),
        DomainError);
  }
}

TEST(LnV, BackendsAgreeWhereBaselineIsFinite) {
  std::mt19937_64 engine(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + engine() % 500;
    const std::size_t dim = 1 + engine() % 120;
    const auto eps = fixtures::log_uniform(n, 0.05, 20.0, engine());
    const auto base = ln_v_baseline(eps, dim);
    if (!base.finite) continue;
    const auto prop = ln_v_proposed(eps, dim);
    EXPECT_NEAR(base.ln_v, prop.ln_v, tolerance(prop.ln_v)) << "trial " << trial;
  }
}

TEST(LnV, ProposedStableOverExtremeRange) {
  std::mt19937_64 engine(77);
  for (std::size_t dim : {1u, 2u, 1024u, 65536u, 1u << 20}) {
    const auto eps = fixtures::log_uniform(300, 1e-300, 1e300, engine());
    const auto r = ln_v_proposed(eps, dim);
    EXPECT_TRUE(r.finite) << "D = " << dim;
    EXPECT_LE(r.ln_v, std::log(r.epsilon_max));
  }
}

TEST(LnV, ScaleEquivariance) {
  std::mt19937_64 engine(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto eps = fixtures::log_uniform(64, 0.1, 10.0, engine());
    const std::size_t dim = 1 + engine() % 64;
    const double c = std::exp(std::uniform_real_distribution<double>(-3.0, 3.0)(engine));
    std::vector<double> scaled(eps);
    for (double& e : scaled) e *= c;
    for (Backend b : {Backend::Baseline, Backend::Proposed, Backend::DominantTerm}) {
      const auto lhs = normalization_factor(scaled, dim, b);
      const auto rhs = normalization_factor(eps, dim, b);
      ASSERT_TRUE(lhs.finite && rhs.finite);
      EXPECT_NEAR(lhs.ln_v, std::log(c) + rhs.ln_v, 1e-12 * std::max(1.0, std::abs(lhs.ln_v)));
    }
  }
}

TEST(LnV, CorrectionTermIsNonPositive) {
  std::mt19937_64 engine(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto eps = fixtures::log_uniform(1 + engine() % 100, 0.1, 10.0, engine());
    const auto r = ln_v_proposed(eps, 1 + engine() % 2048);
    EXPECT_LE(r.ln_v, std::log(r.epsilon_max));
  }
}

TEST(LnV, AsymptoticDominanceWithTies) {
  // m copies of the maximum, the rest at ratio <= 0.99: at D = 1e6 the correction
  // reduces to ln(m / N) / D.
  std::mt19937_64 engine(9);
  for (std::size_t m : {1u, 2u, 5u}) {
    auto eps = fixtures::log_uniform(40, 0.1, 0.99 * 3.0, engine());
    for (std::size_t t = 0; t < m; ++t) eps.push_back(3.0);
    const double n = static_cast<double>(eps.size());
    const auto r = ln_v_proposed(eps, 1000000);
    EXPECT_NEAR(r.ln_v - std::log(3.0), std::log(static_cast<double>(m) / n) / 1e6, 1e-9);
  }
}

TEST(ScaleRadii, WorkedExamples) {
  auto s = scale_radii(kEqual, ln_v_proposed(kEqual, 7));
  for (double v : s.epsilon_tilde) EXPECT_NEAR(v, 1.0, 1e-15);
  EXPECT_NEAR(s.mean_ln_epsilon_tilde, 0.0, 1e-15);

  s = scale_radii(kOneTwo, ln_v_proposed(kOneTwo, 2));
  EXPECT_NEAR(s.epsilon_tilde[0], 1.0 / std::sqrt(2.5), 1e-15);
  EXPECT_NEAR(s.epsilon_tilde[1], 2.0 / std::sqrt(2.5), 1e-15);

  s = scale_radii(kWide, ln_v_proposed(kWide, 512));
  EXPECT_NEAR(s.epsilon_tilde[0], 1.0013547198921082059, 1e-13);
  EXPECT_NEAR(s.epsilon_tilde[1], 0.50067735994605410294, 1e-13);
}

TEST(ScaleRadii, RefusesNonFiniteNormalization) {
  EXPECT_THROW(scale_radii(kWide, ln_v_baseline(kWide, 512)), NonFiniteNormalizationError);
}

TEST(ScaleRadii, ScaleInvariantOutput) {
  std::mt19937_64 engine(14);
  for (int trial = 0; trial < 30; ++trial) {
    const auto eps = fixtures::log_uniform(100, 0.1, 10.0, engine());
    const std::size_t dim = 1 + engine() % 512;
    const double c = std::exp(std::uniform_real_distribution<double>(-5.0, 5.0)(engine));
    std::vector<double> scaled(eps);
    for (double& e : scaled) e *= c;
    const auto a = scale_radii(eps, ln_v_proposed(eps, dim));
    const auto b = scale_radii(scaled, ln_v_proposed(scaled, dim));
    for (std::size_t i = 0; i < eps.size(); ++i) {
      EXPECT_NEAR(a.epsilon_tilde[i], b.epsilon_tilde[i], 1e-12 * std::max(1.0, a.epsilon_tilde[i]));
    }
    EXPECT_NEAR(a.mean_ln_epsilon_tilde, b.mean_ln_epsilon_tilde, 1e-12);
  }
}

TEST(ScaleRadii, ProposedRadiiBoundedByRatioTimesRootN) {
  std::mt19937_64 engine(15);
  for (std::size_t dim : {1u, 16u, 512u, 8192u}) {
    const auto eps = fixtures::log_uniform(1000, 1e-5, 1e5, engine());
    const auto norm = ln_v_proposed(eps, dim);
    const auto s = scale_radii(eps, norm);
    const double root_n = std::pow(static_cast<double>(eps.size()), 1.0 / static_cast<double>(dim));
    for (std::size_t i = 0; i < eps.size(); ++i) {
      EXPECT_LE(s.epsilon_tilde[i], eps[i] / norm.epsilon_max * root_n * (1.0 + 1e-12));
    }
  }
}

TEST(Backend, NamesRoundTrip) {
  for (Backend b : {Backend::Baseline, Backend::Proposed, Backend::DominantTerm}) {
    EXPECT_EQ(parse_backend(to_string(b)), b);
  }
  EXPECT_FALSE(parse_backend("linear").has_value());
}
