#include "oscenv/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "oscenv/errors.hpp"

namespace oscenv {

namespace {

using cplx = std::complex<double>;

cplx eval_poly(const double* a, int deg, cplx z) {
  cplx v = a[deg];
  for (int n = deg - 1; n >= 0; --n) v = v * z + a[n];
  return v;
}

cplx eval_deriv(const double* a, int deg, cplx z) {
  cplx v = static_cast<double>(deg) * a[deg];
  for (int n = deg - 1; n >= 1; --n) v = v * z + static_cast<double>(n) * a[n];
  return v;
}

// Roots of z^2 + b z + c.
std::array<cplx, 2> quadratic(cplx b, cplx c) {
  const cplx disc = std::sqrt(b * b - 4.0 * c);
  // Avoid cancellation: pick the sign that adds magnitudes.
  const cplx q = -0.5 * (b + (std::real(std::conj(b) * disc) >= 0.0 ? disc : -disc));
  if (std::abs(q) == 0.0) return {cplx(0.0), cplx(0.0)};
  return {q, c / q};
}

// Roots of z^3 + b z^2 + c z + d.
std::array<cplx, 3> cubic(cplx b, cplx c, cplx d) {
  const cplx p = c - b * b / 3.0;
  const cplx q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const cplx shift = -b / 3.0;
  const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  cplx u3 = -q / 2.0 + disc;
  const cplx alt = -q / 2.0 - disc;
  if (std::abs(alt) > std::abs(u3)) u3 = alt;
  std::array<cplx, 3> r;
  if (std::abs(u3) == 0.0) {
    r.fill(shift);
    return r;
  }
  const cplx u = std::pow(u3, 1.0 / 3.0);
  const cplx w(-0.5, std::sqrt(3.0) / 2.0);
  cplx uk = u;
  for (int k = 0; k < 3; ++k) {
    r[static_cast<std::size_t>(k)] = uk - p / (3.0 * uk) + shift;
    uk *= w;
  }
  return r;
}

// Roots of z^4 + b z^3 + c z^2 + d z + e.
std::array<cplx, 4> ferrari(double b, double c, double d, double e) {
  const double b2 = b * b;
  const double p = c - 3.0 * b2 / 8.0;
  const double q = d - b * c / 2.0 + b2 * b / 8.0;
  const double r = e - b * d / 4.0 + b2 * c / 16.0 - 3.0 * b2 * b2 / 256.0;
  const double shift = -b / 4.0;
  std::array<cplx, 4> out;
  const double scale = std::max({1.0, std::abs(p), std::sqrt(std::abs(r))});
  if (std::abs(q) <= 1e-15 * scale * std::sqrt(scale)) {
    const auto s = quadratic(cplx(p), cplx(r));
    for (int i = 0; i < 2; ++i) {
      const cplx z = std::sqrt(s[static_cast<std::size_t>(i)]);
      out[static_cast<std::size_t>(2 * i)] = z + shift;
      out[static_cast<std::size_t>(2 * i + 1)] = -z + shift;
    }
    return out;
  }
  // (x^2 + p/2 + m)^2 = 2m x^2 - q x + m^2 + m p + p^2/4 - r is a perfect square
  // when m solves the resolvent cubic below.
  const auto ms = cubic(cplx(p), cplx(p * p / 4.0 - r), cplx(-q * q / 8.0));
  cplx m = ms[0];
  for (const auto& x : ms) {
    if (std::abs(x) > std::abs(m)) m = x;
  }
  const cplx s = std::sqrt(2.0 * m);
  const cplx h = q / (2.0 * s);
  const auto r1 = quadratic(s, p / 2.0 + m - h);
  const auto r2 = quadratic(-s, p / 2.0 + m + h);
  out = {r1[0] + shift, r1[1] + shift, r2[0] + shift, r2[1] + shift};
  return out;
}

// Simultaneous Aberth-Ehrlich refinement of all roots. Roots repel each other,
// so a poor closed-form estimate cannot collapse onto a neighbouring root.
void refine(const double* a, int deg, std::vector<cplx>& z) {
  const std::size_t n = z.size();
  auto accurate = [&](cplx r) {
    double size = 0.0;
    for (int d = deg; d >= 0; --d) size = size * std::abs(r) + std::abs(a[d]);
    return std::abs(eval_poly(a, deg, r)) <= 1e-12 * size;
  };
  if (std::all_of(z.begin(), z.end(), accurate)) return;
  // Estimates that are not already roots are moved off the real axis: real
  // starting points keep the iteration real and it could never reach a pair.
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = std::max(1.0, std::abs(z[i]));
    if (!accurate(z[i])) {
      z[i] += cplx(0.0, 1e-2 * scale * static_cast<double>(i + 1));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (z[i] == z[j]) z[i] += cplx(0.0, 1e-8 * scale);
    }
  }
  for (int it = 0; it < 60; ++it) {
    bool moved = false;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx p = eval_poly(a, deg, z[k]);
      if (p == 0.0) continue;
      const cplx w = p / eval_deriv(a, deg, z[k]);
      cplx repel = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) repel += 1.0 / (z[k] - z[j]);
      }
      const cplx step = w / (1.0 - w * repel);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      if (std::abs(step) > 1e-15 * std::max(1.0, std::abs(z[k]))) moved = true;
    }
    if (!moved) break;
  }
}

double polish_real(const double* a, int deg, double x) {
  double best = std::abs(eval_poly(a, deg, x).real());
  for (int it = 0; it < 4 && best > 0.0; ++it) {
    const double dp = eval_deriv(a, deg, x).real();
    if (dp == 0.0) break;
    const double next = x - eval_poly(a, deg, x).real() / dp;
    const double res = std::abs(eval_poly(a, deg, next).real());
    if (!(res < best)) break;
    x = next;
    best = res;
  }
  return x;
}

}  // namespace

double QuarticCoeffs::max_abs() const {
  double m = 0.0;
  for (double v : A) m = std::max(m, std::abs(v));
  return m;
}

double QuarticCoeffs::eval(double y) const {
  return (((A[4] * y + A[3]) * y + A[2]) * y + A[1]) * y + A[0];
}

QuarticRoots solve_quartic(const QuarticCoeffs& c) {
  for (double v : c.A) {
    if (!std::isfinite(v)) throw InvalidArgument("solve_quartic: non-finite coefficient");
  }
  const double amax = c.max_abs();
  if (amax == 0.0) throw InvalidArgument("solve_quartic: all coefficients are zero");

  // Scaled copy with negligible leading terms dropped.
  std::array<double, 5> a{};
  for (int n = 0; n < 5; ++n) a[static_cast<std::size_t>(n)] = c.A[static_cast<std::size_t>(n)] / amax;
  int deg = 4;
  while (deg > 0 && std::abs(a[static_cast<std::size_t>(deg)]) < kDegreeDropThreshold) --deg;

  QuarticRoots out;
  out.degree = deg;
  if (deg == 0) return out;

  std::vector<cplx> z;
  const double lead = a[static_cast<std::size_t>(deg)];
  auto m = [&](int n) { return a[static_cast<std::size_t>(n)] / lead; };
  switch (deg) {
    case 1:
      z = {cplx(-m(0))};
      break;
    case 2: {
      const auto r = quadratic(cplx(m(1)), cplx(m(0)));
      z.assign(r.begin(), r.end());
      break;
    }
    case 3: {
      const auto r = cubic(cplx(m(2)), cplx(m(1)), cplx(m(0)));
      z.assign(r.begin(), r.end());
      break;
    }
    default: {
      const auto r = ferrari(m(3), m(2), m(1), m(0));
      z.assign(r.begin(), r.end());
      break;
    }
  }

  refine(a.data(), deg, z);

  // Non-real roots come in conjugate pairs; with an odd count the root
  // closest to the axis is taken as real.
  auto tilt = [](cplx r) { return std::abs(r.imag()) / std::max(1.0, std::abs(r)); };
  std::sort(z.begin(), z.end(), [&](cplx x, cplx y) { return tilt(x) < tilt(y); });
  int n_real = 0;
  while (n_real < deg && tilt(z[static_cast<std::size_t>(n_real)]) <= kImagTolerance) ++n_real;
  if ((deg - n_real) % 2 != 0) ++n_real;
  for (int i = 0; i < n_real; ++i) {
    out.real_roots.push_back(polish_real(a.data(), deg, z[static_cast<std::size_t>(i)].real()));
  }
  std::sort(out.real_roots.begin(), out.real_roots.end());
  out.complex_pairs = (deg - n_real) / 2;
  return out;
}

}  // namespace oscenv
