#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oscenv/errors.hpp"
#include "oscenv/quartic.hpp"

using namespace oscenv;

namespace {

QuarticCoeffs from_roots(double a, double b, double c, double d, double lead = 1.0) {
  // lead * (y-a)(y-b)(y-c)(y-d)
  const double e1 = a + b + c + d;
  const double e2 = a * b + a * c + a * d + b * c + b * d + c * d;
  const double e3 = a * b * c + a * b * d + a * c * d + b * c * d;
  const double e4 = a * b * c * d;
  return {{lead * e4, -lead * e3, lead * e2, -lead * e1, lead}};
}

bool residual_ok(const QuarticCoeffs& c, double r) {
  const double scale = std::pow(std::max(1.0, std::abs(r)), 4);
  return std::abs(c.eval(r)) <= 1e-9 * c.max_abs() * scale;
}

}  // namespace

TEST_SUITE("quartic") {

TEST_CASE("biquadratic with positive y^2") {
  const double a = 1e-4;
  const QuarticRoots r = solve_quartic({{-a * a, 0.0, 2.0 * a, 0.0, 0.0}});
  REQUIRE(r.real_roots.size() == 2);
  CHECK(std::abs(r.real_roots[0] + std::sqrt(a / 2)) <= 1e-12);
  CHECK(std::abs(r.real_roots[1] - std::sqrt(a / 2)) <= 1e-12);
  CHECK(r.degree == 2);
}

TEST_CASE("no real roots") {
  const QuarticRoots r = solve_quartic({{4.0, 0.0, 5.0, 0.0, 1.0}});
  CHECK(r.real_roots.empty());
  CHECK(r.complex_pairs == 2);
  CHECK(r.degree == 4);
}

TEST_CASE("four distinct real roots") {
  const QuarticRoots r = solve_quartic(from_roots(-3.0, 0.5, 1.0, 2.0, -2.5));
  REQUIRE(r.real_roots.size() == 4);
  const double expect[] = {-3.0, 0.5, 1.0, 2.0};
  for (int i = 0; i < 4; ++i) CHECK(r.real_roots[i] == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("double roots are found") {
  const QuarticCoeffs c = from_roots(1.0, 1.0, -2.0, -2.0);
  const QuarticRoots r = solve_quartic(c);
  REQUIRE(!r.real_roots.empty());
  for (double x : r.real_roots) {
    CHECK(residual_ok(c, x));
    CHECK(std::min(std::abs(x - 1.0), std::abs(x + 2.0)) < 1e-6);
  }
}

TEST_CASE("cubic and lower degrees") {
  const QuarticRoots cubic = solve_quartic({{-6.0, 11.0, -6.0, 1.0, 0.0}});
  REQUIRE(cubic.real_roots.size() == 3);
  CHECK(cubic.degree == 3);
  CHECK(cubic.real_roots[0] == doctest::Approx(1.0));
  CHECK(cubic.real_roots[2] == doctest::Approx(3.0));

  const QuarticRoots one = solve_quartic({{1.0, 1.0, 0.0, 1.0, 0.0}});
  CHECK(one.real_roots.size() == 1);
  CHECK(one.complex_pairs == 1);

  const QuarticRoots lin = solve_quartic({{3.0, -1.5, 0.0, 0.0, 0.0}});
  REQUIRE(lin.real_roots.size() == 1);
  CHECK(lin.real_roots[0] == 2.0);

  const QuarticRoots constant = solve_quartic({{2.0, 0.0, 0.0, 0.0, 0.0}});
  CHECK(constant.real_roots.empty());
  CHECK(constant.degree == 0);
}

TEST_CASE("negligible leading coefficient drops the degree") {
  const QuarticRoots r = solve_quartic({{-6.0, 11.0, -6.0, 1.0, 1e-18}});
  CHECK(r.degree == 3);
  CHECK(r.real_roots.size() == 3);
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS((void)solve_quartic({{0, 0, 0, 0, 0}}), InvalidArgument);
  CHECK_THROWS_AS((void)solve_quartic({{1, std::nan(""), 0, 0, 1}}), InvalidArgument);
}

TEST_CASE("random coefficients have small residuals") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> expo(-6.0, 6.0);
  int failures = 0;
  int roots = 0;
  for (int n = 0; n < 20000; ++n) {
    QuarticCoeffs c;
    for (double& a : c.A) a = coef(rng) * std::pow(10.0, n % 2 ? expo(rng) : 0.0);
    const QuarticRoots r = solve_quartic(c);
    CHECK(r.real_roots.size() + 2 * static_cast<std::size_t>(r.complex_pairs) ==
          static_cast<std::size_t>(r.degree));
    CHECK(std::is_sorted(r.real_roots.begin(), r.real_roots.end()));
    for (double x : r.real_roots) {
      ++roots;
      if (!residual_ok(c, x)) ++failures;
    }
  }
  CHECK(roots > 20000);
  CHECK(failures == 0);
}

}
