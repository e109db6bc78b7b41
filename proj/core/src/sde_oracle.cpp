#include "oscenv/sde_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oscenv/errors.hpp"
#include "oscenv/fp_solver.hpp"
#include "oscenv/parallel.hpp"
#include "oscenv/philox.hpp"

namespace oscenv {

PathState em_step(const PathState& s, const EnvConfig& cfg, double dt, double n1, double n2) {
  const double w = omega0(s.t, cfg);
  const double a1 = s.u2 * s.u2 - s.u1 * s.u1 - w * w;
  const double a2 = -2.0 * s.u1 * s.u2;
  return {s.u1 + a1 * dt + std::sqrt(2.0 * cfg.eps_r * dt) * n1,
          s.u2 + a2 * dt + std::sqrt(2.0 * cfg.eps_i * dt) * n2, s.t + dt};
}

double short_time_kernel(const PathState& u, const PathState& prev, const EnvConfig& cfg,
                         double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("short_time_kernel: dt must be positive");
  if (!(cfg.eps_r > 0.0) || !(cfg.eps_i > 0.0)) {
    throw InvalidArgument("short_time_kernel: requires eps_r > 0 and eps_i > 0");
  }
  const PathState mean = em_step(prev, cfg, dt, 0.0, 0.0);
  const double v1 = 2.0 * cfg.eps_r * dt;
  const double v2 = 2.0 * cfg.eps_i * dt;
  const double d1 = u.u1 - mean.u1;
  const double d2 = u.u2 - mean.u2;
  return std::exp(-0.5 * (d1 * d1 / v1 + d2 * d2 / v2)) /
         (2.0 * std::numbers::pi * std::sqrt(v1 * v2));
}

void EnsembleRun::validate() const {
  if (n_paths == 0) throw InvalidArgument("EnsembleRun: n_paths must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("EnsembleRun: dt must be positive");
  if (record_times.empty()) throw InvalidArgument("EnsembleRun: no record times");
  for (std::size_t i = 1; i < record_times.size(); ++i) {
    if (!(record_times[i] > record_times[i - 1])) {
      throw InvalidArgument("EnsembleRun: record times must be increasing");
    }
  }
  if (!(cutoff > 0.0)) throw InvalidArgument("EnsembleRun: cutoff must be positive");
  if (start_sd_u1 < 0.0 || start_sd_u2 < 0.0) {
    throw InvalidArgument("EnsembleRun: start spread must be >= 0");
  }
  grid.validate();
}

namespace {

constexpr std::size_t kBlock = 1024;
constexpr std::uint64_t kStartIndex = ~std::uint64_t{0};

struct Moments {
  double re = 0.0, im = 0.0, re2 = 0.0, im2 = 0.0;
  std::size_t n = 0;
};

struct BlockResult {
  std::vector<Moments> moments;  // per record time
  std::size_t blowups = 0;
  std::size_t absorbed = 0;
};

}  // namespace

EnsembleResult simulate_ensemble(const EnvConfig& cfg, const EnsembleRun& run,
                                 const WorkerPool* pool) {
  cfg.validate();
  run.validate();
  if (run.record_times.front() < cfg.t0) {
    throw InvalidArgument("simulate_ensemble: record times must be >= t0");
  }
  const std::size_t nt = run.record_times.size();
  std::vector<long long> goals(nt);
  for (std::size_t i = 0; i < nt; ++i) goals[i] = steps_until(cfg.t0, run.record_times[i], run.dt);
  const long long last = goals.back();

  const auto [s1, s2] = run.start.value_or(std::pair{0.0, omega0(cfg.t0, cfg)});
  const Grid2D& g = run.grid;
  if (run.absorb_outside_grid && !g.contains(s1, s2)) {
    throw InvalidArgument("simulate_ensemble: start point outside the grid");
  }

  std::vector<std::atomic<std::uint32_t>> hist(run.densities ? nt * g.size() : 0);
  for (auto& h : hist) h.store(0, std::memory_order_relaxed);

  const std::size_t nblocks = (run.n_paths + kBlock - 1) / kBlock;
  std::vector<BlockResult> blocks(nblocks);
  const double dt = run.dt;

  auto simulate_block = [&](std::size_t b) {
    BlockResult& out = blocks[b];
    out.moments.assign(nt, Moments{});
    const std::size_t p_end = std::min(run.n_paths, (b + 1) * kBlock);
    for (std::size_t p = b * kBlock; p < p_end; ++p) {
      PathState s{s1, s2, cfg.t0};
      if (run.start_sd_u1 > 0.0 || run.start_sd_u2 > 0.0) {
        const auto [z1, z2] = normal_pair(run.seed, p, kStartIndex);
        s.u1 += run.start_sd_u1 * z1;
        s.u2 += run.start_sd_u2 * z2;
        if (run.absorb_outside_grid && !g.contains(s.u1, s.u2)) {
          ++out.absorbed;
          continue;
        }
      }
      double ir = 0.0;
      double ii = 0.0;
      std::size_t ti = 0;
      for (long long n = 0;; ++n) {
        while (ti < nt && goals[ti] == n) {
          const double mag = std::exp(ir);
          const double vr = mag * std::cos(ii);
          const double vi = mag * std::sin(ii);
          Moments& m = out.moments[ti];
          m.re += vr;
          m.im += vi;
          m.re2 += vr * vr;
          m.im2 += vi * vi;
          ++m.n;
          if (run.densities) {
            const auto [j, k] = g.nearest_node(s.u1, s.u2);
            hist[ti * g.size() + g.index(j, k)].fetch_add(1, std::memory_order_relaxed);
          }
          ++ti;
        }
        if (n >= last) break;
        double n1 = 0.0;
        double n2 = 0.0;
        if (!run.zero_noise) {
          std::tie(n1, n2) = normal_pair(run.seed, p, static_cast<std::uint64_t>(n));
        }
        const PathState next = em_step(s, cfg, dt, n1, n2);
        if (!std::isfinite(next.u1) || !std::isfinite(next.u2) ||
            std::abs(next.u1) > run.cutoff || std::abs(next.u2) > run.cutoff) {
          ++out.blowups;
          break;
        }
        if (run.absorb_outside_grid && !g.contains(next.u1, next.u2)) {
          ++out.absorbed;
          break;
        }
        ir += 0.5 * dt * (s.u1 + next.u1);
        ii += 0.5 * dt * (s.u2 + next.u2);
        s = next;
        s.t = cfg.t0 + static_cast<double>(n + 1) * dt;
      }
    }
  };

  for_each_chunk(pool, nblocks, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t b = lo; b < hi; ++b) simulate_block(b);
  });

  EnsembleResult res;
  res.n_paths = run.n_paths;
  std::vector<Moments> total(nt);
  for (const auto& blk : blocks) {
    res.blowup_count += blk.blowups;
    res.absorbed_count += blk.absorbed;
    for (std::size_t i = 0; i < nt; ++i) {
      total[i].re += blk.moments[i].re;
      total[i].im += blk.moments[i].im;
      total[i].re2 += blk.moments[i].re2;
      total[i].im2 += blk.moments[i].im2;
      total[i].n += blk.moments[i].n;
    }
  }
  res.valid = res.blowup_fraction() <= run.max_blowup_fraction;

  for (std::size_t i = 0; i < nt; ++i) {
    const double t = cfg.t0 + static_cast<double>(goals[i]) * dt;
    const Moments& m = total[i];
    FkEstimate e;
    e.t = t;
    e.n_effective = m.n;
    if (m.n > 0) {
      const double n = static_cast<double>(m.n);
      e.mean = complex(m.re / n, m.im / n);
      if (m.n > 1) {
        const double vr = std::max(0.0, (m.re2 - n * e.mean.real() * e.mean.real()) / (n - 1.0));
        const double vi = std::max(0.0, (m.im2 - n * e.mean.imag() * e.mean.imag()) / (n - 1.0));
        e.re_stderr = std::sqrt(vr / n);
        e.im_stderr = std::sqrt(vi / n);
      }
    } else {
      e.mean = complex(std::nan(""), std::nan(""));
    }
    res.fk.push_back(e);

    if (run.densities) {
      Field2D f(g, t);
      for (std::size_t q = 0; q < g.size(); ++q) {
        f.values[q] = static_cast<double>(hist[i * g.size() + q].load(std::memory_order_relaxed));
      }
      const double mass = trapezoid(f);
      if (mass > 0.0) {
        for (double& v : f.values) v /= mass;
      }
      res.densities.push_back(std::move(f));
    }
  }
  return res;
}

}  // namespace oscenv
