#include <benchmark/benchmark.h>

#include "oscenv/sde_oracle.hpp"

using namespace oscenv;

namespace {

void BM_EmStep(benchmark::State& state) {
  const EnvConfig cfg = EnvConfig::make(0.01, 0.01, 2.0, 0.5);
  PathState s{0.0, 2.5, 0.0};
  double n = 0.1;
  for (auto _ : state) {
    s = em_step(s, cfg, 1e-3, n, -n);
    n = -n;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_EmStep);

void BM_Ensemble(benchmark::State& state) {
  const EnvConfig cfg = EnvConfig::make(0.01, 0.01, 2.0, 0.5);
  EnsembleRun run;
  run.n_paths = static_cast<std::size_t>(state.range(0));
  run.record_times = {1.0};
  for (auto _ : state) {
    const EnsembleResult r = simulate_ensemble(cfg, run);
    benchmark::DoNotOptimize(r.fk.data());
  }
  // One time unit at dt = 1e-3.
  state.SetItemsProcessed(state.iterations() * state.range(0) * 1000);
}
BENCHMARK(BM_Ensemble)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
