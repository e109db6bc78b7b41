#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "oscenv/geometry.hpp"
#include "oscenv/quartic.hpp"

using namespace oscenv;

namespace {

void BM_SolveQuartic(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<QuarticCoeffs> cases(1024);
  for (auto& c : cases) {
    for (auto& a : c.A) a = d(rng);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_quartic(cases[i++ & 1023]));
  }
}
BENCHMARK(BM_SolveQuartic);

void BM_ClassifyManifold(benchmark::State& state) {
  const EnvConfig cfg = EnvConfig::make(1.0, 0.5, 2.0, 0.5);
  const Grid2D g = state.range(0) == 0 ? Grid2D::desk() : Grid2D::fine();
  for (auto _ : state) {
    const RegionMap m = classify_manifold(g, 0.0, cfg);
    benchmark::DoNotOptimize(m.n_total);
  }
}
BENCHMARK(BM_ClassifyManifold)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
