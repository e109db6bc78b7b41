#include <benchmark/benchmark.h>

#include "oscenv/fp_solver.hpp"
#include "oscenv/q_solver.hpp"

using namespace oscenv;

namespace {

EnvConfig row1() { return EnvConfig::make(0.01, 0.01, 2.0, 0.5); }

Grid2D grid_for(const benchmark::State& state) {
  return state.range(0) == 0 ? Grid2D::desk() : Grid2D::fine();
}

void BM_FpStep(benchmark::State& state) {
  const EnvConfig cfg = row1();
  const Grid2D g = grid_for(state);
  const double dt = 0.9 * cfl_check(cfg, g, 1e-9).max_dt;
  FpStepper st(cfg, g, dt);
  Field2D f = init_gaussian(g, GaussianInit::at_phase_point(cfg), 0.0);
  for (auto _ : state) {
    st.step(f);
    benchmark::DoNotOptimize(f.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_FpStep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_QStep(benchmark::State& state) {
  const EnvConfig cfg = row1();
  const Grid2D g = grid_for(state);
  const double dt =
      0.9 * cfl_check(cfg, g, 1e-9, Integrator::SspRk3, q_source_bound(g)).max_dt;
  QStepper st(cfg, g, dt);
  ComplexField q(g, 0.0);
  q.qr = init_gaussian(g, GaussianInit::at_phase_point(cfg), 0.0).values;
  q.qi = q.qr;
  for (auto _ : state) {
    st.step(q);
    benchmark::DoNotOptimize(q.qr.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_QStep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
