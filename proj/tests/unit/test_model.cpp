#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oscenv/errors.hpp"
#include "support.hpp"

using namespace oscenv;

TEST_SUITE("model") {

TEST_CASE("omega0 limits and midpoint") {
  const EnvConfig cfg = test::row(1);
  CHECK(omega0(-1e3, cfg) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(omega0(0.0, cfg) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(omega0(1e3, cfg) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(cfg.omega_min() == 2.0);
  CHECK(cfg.omega_max() == 3.0);
}

TEST_CASE("omega0 is strictly increasing") {
  const EnvConfig cfg = test::row(2);
  double prev = omega0(-15.0, cfg);
  for (double t = -14.9; t < 15.0; t += 0.1) {
    const double w = omega0(t, cfg);
    CHECK(w > prev);
    prev = w;
  }
}

TEST_CASE("constant frequency override") {
  EnvConfig cfg = test::row(1);
  cfg.omega_const = 1.7;
  CHECK(omega0(-4.0, cfg) == 1.7);
  CHECK(omega0(9.0, cfg) == 1.7);
  cfg.omega_const = -1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("drift coefficients") {
  const EnvConfig cfg = test::row(1);
  const DriftCoeffs o = drift(0.0, 0.0, 0.0, cfg);
  CHECK(o.k1 == doctest::Approx(6.25));
  CHECK(o.k2 == 0.0);
  CHECK(o.k0 == 0.0);

  const DriftCoeffs late = drift(1.0, 1.0, 1e3, cfg);
  CHECK(late.k1 == doctest::Approx(9.0));
  CHECK(late.k2 == doctest::Approx(2.0));
  CHECK(late.k0 == doctest::Approx(4.0));

  for (double u1 : {-1.3, 0.4, 2.0}) {
    for (double u2 : {0.7, 3.1}) {
      const DriftCoeffs a = drift(u1, u2, 0.3, cfg);
      const DriftCoeffs b = drift(u1, -u2, 0.3, cfg);
      CHECK(a.k1 == b.k1);
      CHECK(a.k2 == -b.k2);
      CHECK(a.k0 == b.k0);
    }
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(EnvConfig::make(-0.1, 0.01, 2.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(EnvConfig::make(0.01, 0.01, 0.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(EnvConfig::make(0.01, 0.01, 2.0, -1.0), InvalidArgument);
  CHECK_NOTHROW(EnvConfig::make(0.0, 0.0, 2.0, 0.5));
}

TEST_CASE("regular oscillator at constant frequency") {
  EnvConfig cfg = test::row(1);
  const double w = 2.0;
  cfg.omega_const = w;
  const double period = 2.0 * std::numbers::pi / w;
  const Trajectory1D tr = solve_regular_oscillator(cfg, 1.0, 0.0, 1e-3, 10.0 * period);
  CHECK(tr.times.back() == doctest::Approx(10.0 * period).epsilon(1e-15));
  double worst = 0.0;
  double energy_drift = 0.0;
  const double e0 = 0.5 * w * w;
  for (std::size_t n = 0; n < tr.size(); ++n) {
    worst = std::max(worst, std::abs(tr.values[n] - std::cos(w * tr.times[n])));
    const double e = 0.5 * (std::norm(tr.derivatives[n]) + w * w * std::norm(tr.values[n]));
    energy_drift = std::max(energy_drift, std::abs(e - e0) / e0);
  }
  CHECK(worst <= 1e-6);
  CHECK(energy_drift <= 1e-6);
}

TEST_CASE("adiabatic invariant for slowly varying frequency") {
  EnvConfig cfg = EnvConfig::make(0.01, 0.01, 2.0, 0.01, -50.0);
  const double w0 = omega0(-50.0, cfg);
  const Trajectory1D tr = solve_regular_oscillator(cfg, 1.0, complex(0.0, w0), 0.01, 50.0);
  auto invariant = [&](std::size_t n) {
    const double w = omega0(tr.times[n], cfg);
    return 0.5 * (std::norm(tr.derivatives[n]) + w * w * std::norm(tr.values[n])) / w;
  };
  const double i0 = invariant(0);
  double drift_max = 0.0;
  for (std::size_t n = 0; n < tr.size(); ++n) drift_max = std::max(drift_max, std::abs(invariant(n) / i0 - 1.0));
  CHECK(drift_max < 0.01);

  const Trajectory1D fine = solve_regular_oscillator(cfg, 1.0, complex(0.0, w0), 0.001, 50.0);
  CHECK(std::abs(fine.values.back() - tr.values.back()) < 1e-6);
}

TEST_CASE("oscillator step guard") {
  EnvConfig cfg = test::row(1);
  CHECK_THROWS_AS((void)solve_regular_oscillator(cfg, 1.0, 0.0, 0.5, 5.0), StabilityViolation);
  CHECK_THROWS_AS((void)solve_regular_oscillator(cfg, 1.0, 0.0, 0.01, -1.0), InvalidArgument);
}

}
