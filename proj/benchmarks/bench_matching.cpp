#include <benchmark/benchmark.h>

#include <memory>

#include "cellmatch/generators.hpp"
#include "cellmatch/matching.hpp"
#include "cellmatch/subdivision.hpp"

using namespace cellmatch;

namespace {

ComplexPtr subdivided(CellComplex x, int rounds) {
  ComplexPtr out = std::make_shared<const CellComplex>(std::move(x));
  for (int i = 0; i < rounds; ++i) out = barycentric(out).subdivided;
  return out;
}

void BM_WedgeCertificate(benchmark::State& state) {
  const SubcomplexPair pair(subdivided(wedge(), static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(complete_matching(pair));
  state.counters["cells"] = static_cast<double>(pair.cells().size());
}
BENCHMARK(BM_WedgeCertificate)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_TorusMatching(benchmark::State& state) {
  const SubcomplexPair pair(subdivided(torus7(), static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(complete_matching(pair));
  state.counters["cells"] = static_cast<double>(pair.cells().size());
}
BENCHMARK(BM_TorusMatching)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_CircleEnumeration(benchmark::State& state) {
  const SubcomplexPair pair(std::make_shared<const CellComplex>(circle(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_matchings(pair).count);
}
BENCHMARK(BM_CircleEnumeration)->RangeMultiplier(2)->Range(4, 20);

void BM_Barycentric(benchmark::State& state) {
  const auto x = subdivided(torus7(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(barycentric(x));
}
BENCHMARK(BM_Barycentric)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
