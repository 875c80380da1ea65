#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "stablenmi/radius_scaling.hpp"
#include "stablenmi/rng.hpp"

namespace {

std::vector<double> log_uniform_radii(std::size_t n) {
  stablenmi::Rng rng(42);
  std::vector<double> radii(n);
  for (double& r : radii) r = std::exp(std::log(0.1) + std::log(100.0) * rng.uniform_open());
  return radii;
}

// Baseline vs proposed cost at N = 10000; args are the joint dimension.
void BM_LnVBaseline(benchmark::State& state) {
  const auto radii = log_uniform_radii(10000);
  const auto dim = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(stablenmi::ln_v_baseline(radii, dim));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(radii.size()));
}

void BM_LnVProposed(benchmark::State& state) {
  const auto radii = log_uniform_radii(10000);
  const auto dim = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(stablenmi::ln_v_proposed(radii, dim));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(radii.size()));
}

void BM_ScaleRadii(benchmark::State& state) {
  const auto radii = log_uniform_radii(10000);
  const auto norm = stablenmi::ln_v_proposed(radii, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stablenmi::scale_radii(radii, norm));
  }
}

}  // namespace

BENCHMARK(BM_LnVBaseline)->Arg(2)->Arg(64)->Arg(1024);
BENCHMARK(BM_LnVProposed)->Arg(2)->Arg(64)->Arg(1024);
BENCHMARK(BM_ScaleRadii);
