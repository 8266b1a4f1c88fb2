#include <benchmark/benchmark.h>

#include <memory>

#include "cellmatch/generators.hpp"
#include "cellmatch/homology.hpp"
#include "cellmatch/subdivision.hpp"

using namespace cellmatch;

namespace {

ComplexPtr subdivided_torus(int rounds) {
  ComplexPtr out = std::make_shared<const CellComplex>(torus7());
  for (int i = 0; i < rounds; ++i) out = barycentric(out).subdivided;
  return out;
}

void BM_TorusBettiRationals(benchmark::State& state) {
  const SubcomplexPair pair(subdivided_torus(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(betti_numbers(pair, Field::rationals));
  state.counters["cells"] = static_cast<double>(pair.cells().size());
}
BENCHMARK(BM_TorusBettiRationals)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_TorusBettiF2(benchmark::State& state) {
  const SubcomplexPair pair(subdivided_torus(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(betti_numbers(pair, Field::f2));
}
BENCHMARK(BM_TorusBettiF2)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_AcyclicConeMatching(benchmark::State& state) {
  const auto x = std::make_shared<const CellComplex>(cone(simplex(static_cast<int>(state.range(0)))));
  const auto pair = SubcomplexPair::from_ids(x, {x->id(x->cells_of_dim(0).front())}, false);
  for (auto _ : state) benchmark::DoNotOptimize(match_acyclic_pair(pair));
  state.counters["cells"] = static_cast<double>(pair.cells().size());
}
BENCHMARK(BM_AcyclicConeMatching)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
