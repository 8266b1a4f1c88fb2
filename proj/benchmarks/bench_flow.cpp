#include <benchmark/benchmark.h>

#include <memory>

#include "cellmatch/generators.hpp"
#include "cellmatch/transverse_flow.hpp"

using namespace cellmatch;

namespace {

void BM_GridFlowMatching(benchmark::State& state) {
  const GeometricComplex g(
      std::make_shared<const CellComplex>(grid_square(static_cast<int>(state.range(0)))));
  const FieldVector field{{1, -3}};
  for (auto _ : state) benchmark::DoNotOptimize(flow_matching(flow_structure(g, field)));
  state.counters["cells"] = static_cast<double>(g.complex().size());
}
BENCHMARK(BM_GridFlowMatching)->RangeMultiplier(2)->Range(2, 32)->Unit(benchmark::kMillisecond);

void BM_GridTransversality(benchmark::State& state) {
  const GeometricComplex g(
      std::make_shared<const CellComplex>(grid_square(static_cast<int>(state.range(0)))));
  const FieldVector field{{1, -3}};
  for (auto _ : state) benchmark::DoNotOptimize(check_transverse(g, field));
}
BENCHMARK(BM_GridTransversality)->RangeMultiplier(2)->Range(2, 32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
