#include <doctest.h>

#include "oscenv/errors.hpp"
#include "oscenv/stability.hpp"
#include "support.hpp"

using namespace oscenv;

TEST_SUITE("stability") {

TEST_CASE("mesh ratios on the default grid") {
  const StabilityReport r = cfl_check(test::row(1), Grid2D::fine(), 1e-5);
  CHECK(r.r1 == doctest::Approx(2.5e-4));
  CHECK(r.r2 == doctest::Approx(2.5e-4));
}

TEST_CASE("default parameters pass") {
  const StabilityReport r = cfl_check(test::row(1), Grid2D::fine(), 1e-5);
  CHECK(r.ok());
  CHECK(r.max_dt >= 1e-5);
}

TEST_CASE("gross step violates the diffusive bound") {
  const StabilityReport r = cfl_check(test::row(1), Grid2D::fine(), 1.0);
  CHECK_FALSE(r.ok());
  CHECK(r.violated == StabilityBound::Diffusive);
  CHECK(r.value == doctest::Approx(50.0));
  CHECK_THROWS_AS(require_stable(r, "test"), StabilityViolation);
}

TEST_CASE("zero diffusion never trips the diffusive bound") {
  const EnvConfig cfg = EnvConfig::make(0.0, 0.0, 2.0, 0.5);
  for (double dt : {1e-6, 1e-3, 10.0}) {
    const StabilityReport r = cfl_check(cfg, Grid2D::desk(), dt);
    CHECK(r.violated != StabilityBound::Diffusive);
    CHECK(r.r1 == 0.0);
  }
}

TEST_CASE("max_dt sits on the boundary") {
  for (int row = 1; row <= 3; ++row) {
    const EnvConfig cfg = test::row(row);
    const Grid2D g = Grid2D::desk();
    const double m = cfl_check(cfg, g, 1e-9).max_dt;
    CHECK(cfl_check(cfg, g, 0.99 * m).ok());
    CHECK_FALSE(cfl_check(cfg, g, 1.05 * m).ok());
  }
}

TEST_CASE("forward Euler needs a much smaller step than RK3 for weak diffusion") {
  const EnvConfig cfg = test::row(1);
  const Grid2D g = Grid2D::desk();
  const double euler = cfl_check(cfg, g, 1e-9, Integrator::ForwardEuler).max_dt;
  const double rk3 = cfl_check(cfg, g, 1e-9, Integrator::SspRk3).max_dt;
  CHECK(euler < 0.1 * rk3);
}

TEST_CASE("integrator names") {
  CHECK(integrator_from_string(to_string(Integrator::SspRk3)) == Integrator::SspRk3);
  CHECK(integrator_from_string(to_string(Integrator::ForwardEuler)) == Integrator::ForwardEuler);
  CHECK_THROWS_AS((void)integrator_from_string("leapfrog"), InvalidArgument);
}

}
