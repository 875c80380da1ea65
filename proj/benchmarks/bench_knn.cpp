#include <benchmark/benchmark.h>

#include "stablenmi/knn.hpp"
#include "stablenmi/synthetic.hpp"

// Exact Chebyshev k-NN scan; args are (N, d per marginal).
static void BM_KnnRadii(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  const auto data = stablenmi::generate_gaussian({d, 0.5, n, 3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(stablenmi::compute_knn_radii(data, 5, {1}));
  }
  state.SetComplexityN(state.range(0));
}

BENCHMARK(BM_KnnRadii)
    ->Args({1000, 1})
    ->Args({1000, 32})
    ->Args({1000, 512})
    ->Args({4000, 1})
    ->Unit(benchmark::kMillisecond);
