#include <doctest.h>

#include <cmath>

#include "oscenv/errors.hpp"
#include "oscenv/parallel.hpp"
#include "oscenv/sde_oracle.hpp"
#include "support.hpp"

using namespace oscenv;

TEST_SUITE("sde") {

TEST_CASE("noise-free fixed point") {
  EnvConfig cfg = EnvConfig::make(0.0, 0.0, 2.0, 0.5);
  cfg.omega_const = 1.3;
  const PathState s{0.0, 1.3, 0.0};
  const PathState next = em_step(s, cfg, 1e-3, 0.7, -0.2);
  CHECK(next.u1 == 0.0);
  CHECK(next.u2 == 1.3);
  CHECK(next.t == 1e-3);
}

TEST_CASE("noise-free drift from (0, 2) at unit frequency") {
  EnvConfig cfg = EnvConfig::make(0.0, 0.0, 2.0, 0.5);
  cfg.omega_const = 1.0;
  const double dt = 1e-3;
  const PathState next = em_step({0.0, 2.0, 0.0}, cfg, dt, 0.0, 0.0);
  CHECK(next.u1 == doctest::Approx(3.0 * dt));
  CHECK(next.u2 == 2.0);
}

TEST_CASE("vanishing step leaves the state in place") {
  const EnvConfig cfg = test::row(3);
  const PathState s{0.4, -1.2, 0.0};
  double prev = 1.0;
  for (double dt : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const PathState n = em_step(s, cfg, dt, 1.1, -0.8);
    const double dist = std::hypot(n.u1 - s.u1, n.u2 - s.u2);
    CHECK(dist < prev);
    prev = dist;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("noise variance is 2 eps dt") {
  const EnvConfig cfg = EnvConfig::make(0.02, 0.5, 2.0, 0.5);
  const PathState s{0.0, 0.0, 0.0};
  const double dt = 1e-3;
  const PathState a = em_step(s, cfg, dt, 1.0, 1.0);
  const PathState b = em_step(s, cfg, dt, 0.0, 0.0);
  CHECK(a.u1 - b.u1 == doctest::Approx(std::sqrt(2 * 0.02 * dt)));
  CHECK(a.u2 - b.u2 == doctest::Approx(std::sqrt(2 * 0.5 * dt)));
}

TEST_CASE("short-time kernel integrates to one and peaks at the drifted mean") {
  const EnvConfig cfg = test::row(1);
  const double dt = 1e-3;
  const PathState prev{0.3, 2.1, 0.0};
  const PathState mean = em_step(prev, cfg, dt, 0.0, 0.0);
  const Grid2D g = Grid2D::make(mean.u1 - 0.05, mean.u1 + 0.05, mean.u2 - 0.05, mean.u2 + 0.05, 201, 201);
  double mass = 0.0;
  double best = -1.0;
  std::pair<int, int> arg{0, 0};
  for (int k = 0; k < g.L; ++k) {
    for (int j = 0; j < g.M; ++j) {
      const double w = ((j == 0 || j == g.M - 1) ? 0.5 : 1.0) * ((k == 0 || k == g.L - 1) ? 0.5 : 1.0);
      const double v = short_time_kernel({g.u1(j), g.u2(k), dt}, prev, cfg, dt);
      mass += w * v;
      if (v > best) {
        best = v;
        arg = {j, k};
      }
    }
  }
  mass *= g.du1() * g.du2();
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(arg == std::pair{100, 100});
  CHECK_THROWS_AS((void)short_time_kernel(mean, prev, EnvConfig::make(0.0, 0.01, 2, 0.5), dt),
                  InvalidArgument);
}

TEST_CASE("noise-free Feynman-Kac average is a pure phase") {
  EnvConfig cfg = test::row(1);
  cfg.omega_const = 2.5;
  EnsembleRun run;
  run.n_paths = 1;
  run.zero_noise = true;
  run.dt = 1e-3;
  run.record_times = {1.0, 5.0, 10.0};
  run.densities = false;
  const EnsembleResult r = simulate_ensemble(cfg, run);
  REQUIRE(r.fk.size() == 3);
  for (const auto& e : r.fk) {
    CHECK(std::abs(e.mean - std::exp(complex(0.0, 2.5 * e.t))) <= 1e-6);
  }
}

TEST_CASE("density just after t0 sits at the phase point") {
  const EnvConfig cfg = test::row(1);
  EnsembleRun run;
  run.n_paths = 5000;
  run.dt = 1e-3;
  run.record_times = {0.002};
  const EnsembleResult r = simulate_ensemble(cfg, run);
  const Field2D& d = r.densities[0];
  const auto [j0, k0] = d.grid.nearest_node(0.0, omega0(0.0, cfg));
  double inside = 0.0, total = 0.0;
  for (int k = 0; k < d.grid.L; ++k) {
    for (int j = 0; j < d.grid.M; ++j) {
      total += d.at(j, k);
      if (std::abs(j - j0) <= 3 && std::abs(k - k0) <= 3) inside += d.at(j, k);
    }
  }
  CHECK(inside == doctest::Approx(total));
}

TEST_CASE("ensemble is independent of the thread count") {
  const EnvConfig cfg = test::row(3);
  EnsembleRun run;
  run.n_paths = 3000;
  run.dt = 1e-2;
  run.record_times = {0.5, 1.0};
  const EnsembleResult serial = simulate_ensemble(cfg, run);
  const WorkerPool pool(3);
  const EnsembleResult threaded = simulate_ensemble(cfg, run, &pool);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(serial.densities[i].values == threaded.densities[i].values);
    CHECK(serial.fk[i].mean == threaded.fk[i].mean);
    CHECK(serial.fk[i].re_stderr == threaded.fk[i].re_stderr);
  }
  run.seed = 2;
  const EnsembleResult other = simulate_ensemble(cfg, run);
  CHECK(other.fk[1].mean != serial.fk[1].mean);
}

TEST_CASE("run validation") {
  EnsembleRun run;
  run.record_times = {1.0, 0.5};
  CHECK_THROWS_AS(run.validate(), InvalidArgument);
  run.record_times = {1.0};
  run.n_paths = 0;
  CHECK_THROWS_AS(run.validate(), InvalidArgument);
}

TEST_CASE("runaway paths mark the run invalid") {
  const EnvConfig cfg = test::row(2);
  EnsembleRun run;
  run.n_paths = 200;
  run.dt = 1e-2;
  run.record_times = {3.0};
  run.absorb_outside_grid = false;
  run.start = std::pair{2.0, 0.0};
  run.cutoff = 5.0;
  run.densities = false;
  const EnsembleResult r = simulate_ensemble(cfg, run);
  CHECK(r.blowup_count > 0);
  CHECK(r.blowup_fraction() == doctest::Approx(double(r.blowup_count) / 200.0));
  CHECK(r.valid == (r.blowup_fraction() <= run.max_blowup_fraction));
}

}
