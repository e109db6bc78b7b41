#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oscenv/errors.hpp"
#include "oscenv/fp_solver.hpp"
#include "oscenv/parallel.hpp"
#include "support.hpp"

using namespace oscenv;

namespace {

double interior_sum(const Field2D& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s;
}

// Weak-diffusion settings on a small box where forward Euler is stable.
struct EulerSetup {
  EnvConfig cfg = test::row(1);
  Grid2D grid = test::small_grid(21, 21, 1.0, 1.0);
  double dt = 1e-4;
  StepOptions opts{Integrator::ForwardEuler, nullptr};
};

}  // namespace

TEST_SUITE("fp") {

TEST_CASE("initial gaussian") {
  const GaussianInit init;
  CHECK(init.omega() == doctest::Approx(std::numbers::pi * 500.0 * 0.25));
  CHECK(init.sigma * std::numbers::pi * init.a * init.b / init.omega() == doctest::Approx(1.0));

  const Grid2D g = Grid2D::fine();
  const Field2D f = init_gaussian(g, init);
  const auto origin = g.node_at(0.0, 0.0);
  REQUIRE(origin.has_value());
  CHECK(f.at(origin->first, origin->second) == 500.0);
  for (int k = 0; k < g.L; k += 7) {
    for (int j = 0; j < g.M; j += 5) {
      CHECK(f.at(j, k) == f.at(j, g.L - 1 - k));
      CHECK(f.at(j, k) == f.at(g.M - 1 - j, k));
    }
  }
  CHECK(normalize(f).alpha == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("initial gaussian must fit inside the grid") {
  GaussianInit init;
  init.center_u1 = 5.99;
  CHECK_THROWS_AS((void)init_gaussian(Grid2D::fine(), init), InvalidArgument);
  init.center_u1 = 0.0;
  init.sigma = -1.0;
  CHECK_THROWS_AS((void)init_gaussian(Grid2D::fine(), init), InvalidArgument);
}

TEST_CASE("phase point centring") {
  const EnvConfig cfg = test::row(1);
  const GaussianInit g = GaussianInit::at_phase_point(cfg);
  CHECK(g.center_u1 == 0.0);
  CHECK(g.center_u2 == omega0(cfg.t0, cfg));
}

TEST_CASE("zero field stays zero") {
  const Grid2D g = Grid2D::desk();
  const Field2D z(g, 0.0);
  const EnvConfig cfg = test::row(1);
  const double dt = 0.5 * cfl_check(cfg, g, 1e-9).max_dt;
  const Field2D out = fp_step(z, cfg, dt);
  for (double v : out.values) CHECK(v == 0.0);
  CHECK(out.t == doctest::Approx(dt));
}

TEST_CASE("uniform data gains only the source term") {
  EulerSetup s;
  Field2D f(s.grid, 0.0);
  const double c = 0.75;
  for (int k = 1; k < s.grid.L - 1; ++k)
    for (int j = 1; j < s.grid.M - 1; ++j) f.at(j, k) = c;
  const Field2D out = fp_step(f, s.cfg, s.dt, s.opts);
  for (int k = 2; k < s.grid.L - 2; ++k) {
    for (int j = 2; j < s.grid.M - 2; ++j) {
      const double expected = c * (1.0 + 4.0 * s.dt * s.grid.u1(j));
      CHECK(out.at(j, k) == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("step is linear") {
  const Grid2D g = test::small_grid(31, 37);
  const EnvConfig cfg = test::row(3);
  const double dt = 0.5 * cfl_check(cfg, g, 1e-9).max_dt;
  const Field2D x = test::random_field(g, 1);
  const Field2D y = test::random_field(g, 2);
  Field2D mix(g, 0.0);
  const double a = 1.7, b = -0.3;
  for (std::size_t i = 0; i < mix.values.size(); ++i) mix.values[i] = a * x.values[i] + b * y.values[i];
  const Field2D fx = fp_step(x, cfg, dt);
  const Field2D fy = fp_step(y, cfg, dt);
  const Field2D fm = fp_step(mix, cfg, dt);
  double worst = 0.0;
  for (std::size_t i = 0; i < fm.values.size(); ++i) {
    worst = std::max(worst, std::abs(fm.values[i] - (a * fx.values[i] + b * fy.values[i])));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("a point perturbation spreads one cell per stage") {
  const Grid2D g = test::small_grid(31, 31);
  const EnvConfig cfg = test::row(2);
  const double dt = 0.5 * cfl_check(cfg, g, 1e-9).max_dt;
  for (auto integrator : {Integrator::ForwardEuler, Integrator::SspRk3}) {
    if (integrator == Integrator::ForwardEuler && !cfl_check(cfg, g, dt, integrator).ok()) continue;
    const int reach = integrator == Integrator::SspRk3 ? 3 : 1;
    Field2D f(g, 0.0);
    f.at(15, 15) = 1.0;
    const Field2D out = fp_step(f, cfg, dt, {integrator, nullptr});
    for (int k = 0; k < g.L; ++k) {
      for (int j = 0; j < g.M; ++j) {
        const bool near = std::abs(j - 15) + std::abs(k - 15) <= reach;
        if (!near) CHECK(out.at(j, k) == 0.0);
      }
    }
    CHECK(out.at(15 + reach, 15) != 0.0);
  }
}

TEST_CASE("mirror data gives mirror output bit for bit") {
  const Grid2D g = test::small_grid(41, 41);
  const EnvConfig cfg = test::row(1);
  const double dt = 0.9 * cfl_check(cfg, g, 1e-9).max_dt;
  const Field2D f = test::random_field(g, 11);
  Field2D m(g, 0.0);
  for (int k = 0; k < g.L; ++k)
    for (int j = 0; j < g.M; ++j) m.at(j, k) = f.at(j, g.L - 1 - k);
  FpStepper a(cfg, g, dt);
  FpStepper b(cfg, g, dt);
  Field2D x = f, y = m;
  for (int n = 0; n < 50; ++n) {
    a.step(x);
    b.step(y);
  }
  bool exact = true;
  for (int k = 0; k < g.L; ++k)
    for (int j = 0; j < g.M; ++j) exact = exact && x.at(j, k) == y.at(j, g.L - 1 - k);
  CHECK(exact);
}

TEST_CASE("mass is conserved away from the boundary") {
  const Grid2D g = Grid2D::desk();
  const EnvConfig cfg = test::row(1);
  const double dt = 0.9 * cfl_check(cfg, g, 1e-9).max_dt;
  GaussianInit init = GaussianInit::at_phase_point(cfg);
  init.sigma = 20.0;
  Field2D f = init_gaussian(g, init);
  const double m0 = interior_sum(f);
  FpStepper stepper(cfg, g, dt);
  for (int n = 0; n < 500; ++n) stepper.step(f);
  CHECK(interior_sum(f) == doctest::Approx(m0).epsilon(1e-12));
}

TEST_CASE("stepper rejects bad input") {
  const Grid2D g = test::small_grid(21, 21);
  const EnvConfig cfg = test::row(1);
  CHECK_THROWS_AS(FpStepper(cfg, g, 10.0), StabilityViolation);
  const double dt = 0.5 * cfl_check(cfg, g, 1e-9).max_dt;
  FpStepper stepper(cfg, g, dt);
  Field2D ring(g, 0.0);
  ring.at(0, 5) = 1.0;
  CHECK_THROWS_AS(stepper.step(ring), InvalidArgument);
  Field2D other(test::small_grid(23, 21), 0.0);
  CHECK_THROWS_AS(stepper.step(other), InvalidArgument);
  Field2D nan(g, 0.0);
  nan.at(4, 4) = std::nan("");
  CHECK_THROWS_AS(stepper.step(nan), NumericalFailure);
}

TEST_CASE("threaded step matches serial bit for bit") {
  const Grid2D g = Grid2D::desk();
  const EnvConfig cfg = test::row(3);
  const double dt = 0.9 * cfl_check(cfg, g, 1e-9).max_dt;
  const Field2D f = test::random_field(g, 5);
  const WorkerPool pool(4);
  const Field2D serial = fp_step(f, cfg, dt);
  const Field2D threaded = fp_step(f, cfg, dt, {Integrator::SspRk3, &pool});
  CHECK(serial.values == threaded.values);
}

TEST_CASE("normalize") {
  const Grid2D g = test::small_grid(21, 21);
  Field2D f = test::random_field(g, 3);
  const Normalized n = normalize(f);
  const Normalized again = normalize(n.field);
  CHECK(again.alpha == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(test::max_abs_diff(again.field.values, n.field.values) < 1e-15);
  for (double& v : f.values) v *= 8.0;
  const Normalized scaled = normalize(f);
  CHECK(scaled.alpha == doctest::Approx(8.0 * n.alpha));
  CHECK(test::max_abs_diff(scaled.field.values, n.field.values) < 1e-15);
  CHECK_THROWS_AS((void)normalize(Field2D(g, 0.0)), DensityError);
}

TEST_CASE("step counting") {
  CHECK(steps_until(0.0, 1.5, 1e-5) == 150000);
  CHECK(steps_until(0.0, 1.0, 0.3) == 3);
  CHECK(steps_until(2.0, 2.0, 0.1) == 0);
}

TEST_CASE("run at t0 returns the normalized initial gaussian") {
  const EnvConfig cfg = test::row(1);
  const Grid2D g = Grid2D::fine();
  const FpRun run = run_fp(cfg, g, 1e-5, {0.0});
  REQUIRE(run.snapshots.size() == 1);
  const Normalized expected = normalize(init_gaussian(g, GaussianInit::at_phase_point(cfg)));
  CHECK(run.snapshots[0].t == 0.0);
  CHECK(run.snapshots[0].alpha == expected.alpha);
  CHECK(run.snapshots[0].field.values == expected.field.values);
}

TEST_CASE("run records snapshots and an alpha series") {
  const EnvConfig cfg = test::row(3);
  const Grid2D g = test::small_grid(41, 41, 3.0, 5.0);
  FpRunOptions opts;
  opts.init = GaussianInit::at_phase_point(cfg);
  opts.init->sigma = 20.0;
  opts.series_interval = 0.05;
  const double dt = 0.9 * cfl_check(cfg, g, 1e-9).max_dt;
  const FpRun run = run_fp(cfg, g, dt, {0.1, 0.2}, opts);
  REQUIRE(run.snapshots.size() == 2);
  CHECK(run.snapshots[1].t <= 0.2);
  CHECK(run.snapshots[1].t > 0.2 - dt);
  CHECK(run.alpha_series.size() >= 4);
  CHECK(run.alpha_series.front().first == 0.0);
  CHECK_THROWS_AS((void)run_fp(cfg, g, dt, {0.2, 0.1}, opts), InvalidArgument);
}

}
