#include <benchmark/benchmark.h>

#include "asysa/model.hpp"

namespace {

const asysa::ArrayConfig kArray(32, 32, 16, 37);
const asysa::ActivityProfile kActivity(0.22, 0.36);

void BM_OptimalAspectRatio(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(asysa::optimal_aspect_ratio(kArray, kActivity));
  }
}
BENCHMARK(BM_OptimalAspectRatio);

void BM_NumericMinAspectRatio(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(asysa::numeric_min_aspect_ratio(kArray, kActivity));
  }
}
BENCHMARK(BM_NumericMinAspectRatio);

void BM_RelativeCostSavings(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(asysa::relative_cost_savings(kArray, kActivity));
  }
}
BENCHMARK(BM_RelativeCostSavings);

void BM_WeightedCost(benchmark::State& state) {
  const asysa::PeGeometry pe = asysa::solve_geometry(1.0, 3.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(asysa::weighted_cost(kArray, pe, kActivity));
  }
}
BENCHMARK(BM_WeightedCost);

}  // namespace

BENCHMARK_MAIN();
