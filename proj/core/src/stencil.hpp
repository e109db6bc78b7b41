#pragma once

// Shared explicit central-difference stage for the P and Q equations.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "oscenv/grid.hpp"
#include "oscenv/model.hpp"
#include "oscenv/parallel.hpp"

namespace oscenv::detail {

struct StageCoeffs {
  double r1 = 0.0;  // eps_r dt / du1^2
  double r2 = 0.0;  // eps_i dt / du2^2
  double h1 = 0.0;  // dt / (2 du1)
  double h2 = 0.0;  // dt / du2
  double dt = 0.0;
  double source = 4.0;  // coefficient of u1 in the source term

  static StageCoeffs make(const EnvConfig& cfg, const Grid2D& g, double dt, double source) {
    return {cfg.eps_r * dt / (g.du1() * g.du1()), cfg.eps_i * dt / (g.du2() * g.du2()),
            dt / (2.0 * g.du1()), dt / g.du2(), dt, source};
  }
};

// One forward-Euler stage of
//   out = in + r1 d2_1 in + r2 d2_2 in + h1 d_1(k1 in) + h2/2 d_2(k2 in)
//         [+ dt ((s - 4) u1 in + sign u2 other)]
// on interior nodes, with k1 = u1^2 - u2^2 + w2 and k2 = 2 u1 u2. The drift
// enters in flux form; since k is quadratic, d_1 k1 + d_2 k2 = 4 u1 exactly,
// so constant data sees the source 4 u1 of the P equation. The outer ring of
// `out` is set to zero. Reflecting the inputs through u2 = 0 reflects the
// output bit for bit. Returns false if any output is not finite.
template <bool Extra, bool Coupled>
bool central_stage(const Grid2D& g, const StageCoeffs& c, double omega_sq,
                   std::span<const double> in, std::span<const double> other,
                   double coupling_sign, std::span<double> out,
                   const WorkerPool* pool) {
  const int M = g.M;
  const int L = g.L;
  std::vector<double> u1(static_cast<std::size_t>(M));
  std::vector<double> u1sq(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    u1[static_cast<std::size_t>(j)] = g.u1(j);
    u1sq[static_cast<std::size_t>(j)] = g.u1(j) * g.u1(j);
  }
  const double h2half = 0.5 * c.h2;
  const double extra = c.source - 4.0;
  std::vector<char> row_ok(static_cast<std::size_t>(L), 1);
  for_each_chunk(pool, static_cast<std::size_t>(L), [&](std::size_t kb, std::size_t ke) {
    for (std::size_t kk = kb; kk < ke; ++kk) {
      const int k = static_cast<int>(kk);
      double* o = out.data() + g.index(0, k);
      if (k == 0 || k == L - 1) {
        for (int j = 0; j < M; ++j) o[j] = 0.0;
        continue;
      }
      const double* p = in.data() + g.index(0, k);
      const double* pn = p + M;
      const double* ps = p - M;
      const double* q = Coupled ? other.data() + g.index(0, k) : nullptr;
      const double u2 = g.u2(k);
      const double u2n = g.u2(k + 1);
      const double u2s = g.u2(k - 1);
      const double base = omega_sq - u2 * u2;
      bool ok = true;
      o[0] = 0.0;
      o[M - 1] = 0.0;
      for (int j = 1; j < M - 1; ++j) {
        const double x = u1[static_cast<std::size_t>(j)];
        const double pc = p[j];
        const double pe = p[j + 1];
        const double pw = p[j - 1];
        const double k1e = u1sq[static_cast<std::size_t>(j + 1)] + base;
        const double k1w = u1sq[static_cast<std::size_t>(j - 1)] + base;
        const double twox = 2.0 * x;
        const double flux1 = k1e * pe - k1w * pw;
        const double flux2 = (twox * u2n) * pn[j] - (twox * u2s) * ps[j];
        double v = pc + c.r1 * ((pe + pw) - 2.0 * pc) + c.r2 * ((pn[j] + ps[j]) - 2.0 * pc) +
                   c.h1 * flux1 + h2half * flux2;
        if constexpr (Extra && Coupled) {
          v += c.dt * (extra * x * pc + coupling_sign * (u2 * q[j]));
        } else if constexpr (Extra) {
          v += c.dt * (extra * x * pc);
        }
        o[j] = v;
        ok = ok && std::isfinite(v);
      }
      row_ok[kk] = ok ? 1 : 0;
    }
  });
  return std::all_of(row_ok.begin(), row_ok.end(), [](char r) { return r != 0; });
}

}  // namespace oscenv::detail

namespace oscenv::detail {

// out = wa * a + wb * b, elementwise.
inline void combine(std::span<const double> a, double wa, std::span<const double> b,
                    double wb, std::span<double> out, const WorkerPool* pool) {
  for_each_chunk(pool, out.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) out[i] = wa * a[i] + wb * b[i];
  });
}

}  // namespace oscenv::detail
