// Serial reference vs OpenMP for the two parallel kernels.

#include <benchmark/benchmark.h>

#include "dynamo/oracle.hpp"
#include "dynamo/planewave.hpp"

using namespace dynamo;

namespace {

void BM_HullCheck(benchmark::State& state) {
  const auto exec = state.range(0) ? Execution::Parallel : Execution::Serial;
  const SampleConfig cfg{0, static_cast<std::size_t>(state.range(1)), HullParams(1.0, 1.0), ConeKind::NonStationary};
  for (auto _ : state) benchmark::DoNotOptimize(two_sided_hull_check(cfg, {}, {}, exec));
  state.SetItemsProcessed(state.iterations() * state.range(1) * 2);
}

void BM_GridResidual(benchmark::State& state) {
  const auto exec = state.range(0) ? Execution::Parallel : Execution::Serial;
  const Triple dir{{1, 0, 0}, {0, 0.5, 0.5}, {0, 1, 0.5}};
  const WaveVector xi = wave_vector_for(dir, ConeKind::NonStationary);
  const GridSpec g = GridSpec::periodic(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(grid_residual(dir, xi, g, ConeKind::NonStationary, exec));
}

}  // namespace

BENCHMARK(BM_HullCheck)->ArgNames({"parallel", "count"})->ArgsProduct({{0, 1}, {10000, 100000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridResidual)->ArgNames({"parallel", "n"})->ArgsProduct({{0, 1}, {16, 32}})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
