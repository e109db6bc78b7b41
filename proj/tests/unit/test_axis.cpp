#include <doctest.h>

#include <algorithm>

#include "oscenv/axis_solver.hpp"
#include "oscenv/errors.hpp"
#include "support.hpp"

using namespace oscenv;

TEST_SUITE("axis") {

TEST_CASE("zero profile stays zero") {
  const EnvConfig cfg = test::row(1);
  const AxisProfile z = AxisProfile::make(Axis::U1, -6.0, 6.0, 601);
  const AxisProfile out = axis1_step(z, cfg, 1e-5);
  CHECK(std::all_of(out.values.begin(), out.values.end(), [](double v) { return v == 0.0; }));
  const AxisProfile z2 = AxisProfile::make(Axis::U2, -8.0, 8.0, 801);
  const auto [a, b] = axis2_step(z2, z2, cfg, 1e-5);
  CHECK(std::all_of(a.values.begin(), a.values.end(), [](double v) { return v == 0.0; }));
  CHECK(std::all_of(b.values.begin(), b.values.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("uniform interior gains the source term") {
  const EnvConfig cfg = test::row(1);
  AxisProfile p = AxisProfile::make(Axis::U1, -2.0, 2.0, 41);
  const double c = 2.0, dt = 1e-4;
  for (int i = 1; i + 1 < p.size(); ++i) p.values[i] = c;
  const AxisProfile out = axis1_step(p, cfg, dt);
  for (int i = 2; i + 2 < p.size(); ++i) {
    CHECK(out.values[i] == doctest::Approx(c * (1.0 + 5.0 * dt * p.x(i))).epsilon(1e-14));
  }
  CHECK(out.t == dt);
}

TEST_CASE("narrow gaussian stays nonnegative when diffusion dominates the cell") {
  const EnvConfig cfg = test::row(2);
  AxisProfile p = axis_gaussian(Axis::U1, -6.0, 6.0, 601, 0.0, 500.0);
  for (int n = 0; n < 1000; ++n) p = axis1_step(p, cfg, 1e-5);
  CHECK(*std::min_element(p.values.begin(), p.values.end()) >= 0.0);
  CHECK(axis_mass(p) > 0.0);
}

TEST_CASE("weak diffusion undershoots at high cell Peclet number") {
  // eps_r = 0.01 at du = 0.02 gives a cell Peclet number near 12 at the origin.
  const EnvConfig cfg = test::row(1);
  AxisProfile p = axis_gaussian(Axis::U1, -6.0, 6.0, 601, 0.0, 500.0);
  for (int n = 0; n < 1000; ++n) p = axis1_step(p, cfg, 1e-5);
  CHECK(*std::min_element(p.values.begin(), p.values.end()) < 0.0);
}

TEST_CASE("even data reduces to the local equation") {
  const EnvConfig cfg = test::row(3);
  const double dt = 1e-4;
  const AxisProfile p = axis_gaussian(Axis::U2, -8.0, 8.0, 401, 1.0, 20.0);
  const auto [a, b] = axis2_step(p, p, cfg, dt);
  CHECK(a.values == b.values);
  const double w = omega0(0.0, cfg);
  const double r = cfg.eps_i * dt / (p.dx() * p.dx());
  for (int i = 1; i + 1 < p.size(); ++i) {
    const double u = p.x(i);
    const double local = p.values[i] + r * (p.values[i + 1] + p.values[i - 1] - 2 * p.values[i]) +
                         dt * (0.5 * (w * w - u * u) + u) * p.values[i];
    CHECK(a.values[i] == doctest::Approx(local).epsilon(1e-13).scale(1e-300));
  }
}

TEST_CASE("odd data stays odd") {
  const EnvConfig cfg = test::row(3);
  const AxisProfile p = axis_gaussian(Axis::U2, -8.0, 8.0, 401, 1.0, 20.0);
  AxisProfile m = p;
  for (double& v : m.values) v = -v;
  auto [a, b] = axis2_step(p, m, cfg, 1e-4);
  for (int n = 0; n < 20; ++n) std::tie(a, b) = axis2_step(a, b, cfg, 1e-4);
  for (int i = 0; i < p.size(); ++i) CHECK(b.values[i] == -a.values[i]);
}

TEST_CASE("step guards") {
  const EnvConfig cfg = test::row(2);
  const AxisProfile p = axis_gaussian(Axis::U1, -6.0, 6.0, 601, 0.0, 500.0);
  CHECK_THROWS_AS((void)axis1_step(p, cfg, 1e-3), StabilityViolation);
  const AxisProfile u2 = AxisProfile::make(Axis::U2, -8.0, 8.0, 801);
  CHECK_THROWS_AS((void)axis1_step(u2, cfg, 1e-6), InvalidArgument);
  const AxisProfile shorter = AxisProfile::make(Axis::U2, -8.0, 8.0, 401);
  CHECK_THROWS_AS((void)axis2_step(u2, shorter, cfg, 1e-6), InvalidArgument);
}

TEST_CASE("neumann traces") {
  AxisProfile q1 = axis_gaussian(Axis::U1, -6.0, 6.0, 601, 0.0, 50.0);
  AxisProfile q2 = axis_gaussian(Axis::U2, -8.0, 8.0, 801, 0.5, 50.0);
  for (double& v : q1.values) v *= 4.0;
  const auto [t1, t2] = neumann_boundary_values(q1, q2);
  CHECK(axis_mass(t1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(axis_mass(t2) == doctest::Approx(0.5).epsilon(1e-12));

  const AxisProfile zero = AxisProfile::make(Axis::U2, -8.0, 8.0, 801);
  const auto [z1, z2] = neumann_boundary_values(q1, zero);
  CHECK(std::all_of(z2.values.begin(), z2.values.end(), [](double v) { return v == 0.0; }));
  CHECK(axis_mass(z1) == doctest::Approx(1.0));

  AxisProfile neg = q2;
  for (double& v : neg.values) v = -v;
  CHECK_THROWS_AS((void)neumann_boundary_values(q1, neg), DensityError);
}

}
