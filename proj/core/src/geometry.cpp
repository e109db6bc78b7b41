#include "oscenv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "oscenv/errors.hpp"
#include "oscenv/field_io.hpp"
#include "oscenv/parallel.hpp"

namespace oscenv {

MetricPoint MetricPoint::make(const EnvConfig& cfg, double y) {
  return {cfg.eps_r, cfg.eps_i, y, -y};
}

QuarticCoeffs quartic_coeffs(double u1, double u2, double t, const EnvConfig& cfg) {
  const double er = cfg.eps_r;
  const double ei = cfg.eps_i;
  const double a = er * ei;
  const double w = omega0(t, cfg);
  const double B = u1 * u1 - u2 * u2 + w * w;
  const double mix = u1 * u1 * u2 * u2;
  QuarticCoeffs c;
  c.A[0] = a * (4.0 * a * u1 - 4.0 * er * mix - ei * B * B);
  c.A[1] = -2.0 * a * u2 * (er + ei);
  c.A[2] = 24.0 * a * u1 + 8.0 * er * mix + 2.0 * ei * B * B;
  c.A[3] = -8.0 * u2 * (er + ei);
  c.A[4] = 32.0 * u1;
  return c;
}

bool has_real_root(const QuarticCoeffs& c) {
  if (c.max_abs() == 0.0) return true;
  return !solve_quartic(c).real_roots.empty();
}

int count_components(int M, int L, std::span<const std::uint8_t> mask, int k_begin, int k_end) {
  if (mask.size() != static_cast<std::size_t>(M) * static_cast<std::size_t>(L)) {
    throw InvalidArgument("count_components: mask size mismatch");
  }
  k_begin = std::max(k_begin, 0);
  k_end = std::min(k_end, L);
  std::vector<std::uint8_t> seen(mask.size(), 0);
  std::vector<std::size_t> stack;
  int count = 0;
  auto idx = [M](int j, int k) {
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(M) + static_cast<std::size_t>(j);
  };
  for (int k = k_begin; k < k_end; ++k) {
    for (int j = 0; j < M; ++j) {
      const std::size_t start = idx(j, k);
      if (!mask[start] || seen[start]) continue;
      ++count;
      seen[start] = 1;
      stack.push_back(start);
      while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        const int cj = static_cast<int>(cur % static_cast<std::size_t>(M));
        const int ck = static_cast<int>(cur / static_cast<std::size_t>(M));
        const int nbr[4][2] = {{cj - 1, ck}, {cj + 1, ck}, {cj, ck - 1}, {cj, ck + 1}};
        for (const auto& nb : nbr) {
          if (nb[0] < 0 || nb[0] >= M || nb[1] < k_begin || nb[1] >= k_end) continue;
          const std::size_t n = idx(nb[0], nb[1]);
          if (mask[n] && !seen[n]) {
            seen[n] = 1;
            stack.push_back(n);
          }
        }
      }
    }
  }
  return count;
}

void recount(RegionMap& map) {
  const Grid2D& g = map.grid;
  int first_upper = g.L;
  int end_lower = 0;
  for (int k = 0; k < g.L; ++k) {
    const double u2 = g.u2(k);
    if (u2 < 0.0) end_lower = k + 1;
    if (u2 > 0.0 && first_upper == g.L) first_upper = k;
  }
  map.n_total = count_components(g.M, g.L, map.retained, 0, g.L);
  map.n_upper = count_components(g.M, g.L, map.retained, first_upper, g.L);
  map.n_lower = count_components(g.M, g.L, map.retained, 0, end_lower);
  map.excised_count = 0;
  for (auto v : map.retained) map.excised_count += v ? 0 : 1;
}

RegionMap classify_manifold(const Grid2D& grid, double t, const EnvConfig& cfg,
                            const WorkerPool* pool) {
  grid.validate();
  cfg.validate();
  RegionMap map{grid, t, std::vector<std::uint8_t>(grid.size(), 0), 0, 0, 0, 0};
  for_each_chunk(pool, static_cast<std::size_t>(grid.L), [&](std::size_t kb, std::size_t ke) {
    for (std::size_t kk = kb; kk < ke; ++kk) {
      const int k = static_cast<int>(kk);
      for (int j = 0; j < grid.M; ++j) {
        map.retained[grid.index(j, k)] =
            has_real_root(quartic_coeffs(grid.u1(j), grid.u2(k), t, cfg)) ? 1 : 0;
      }
    }
  });
  recount(map);
  return map;
}

std::string RegionMap::to_text() const {
  std::string s = grid_header(grid, t);
  s += '\n';
  s.reserve(s.size() + grid.size() + static_cast<std::size_t>(grid.L));
  for (int k = 0; k < grid.L; ++k) {
    for (int j = 0; j < grid.M; ++j) s += is_retained(j, k) ? 'R' : 'X';
    s += '\n';
  }
  return s;
}

AngleResult angles(double dtheta, double y, double lambda, AngleBranch branch) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("angles: lambda_scale must be positive");
  }
  AngleResult r;
  r.dtheta = dtheta;
  r.lambda_scale = lambda;
  const double h = std::hypot(lambda, y);
  r.delta = std::atan2(y / h, lambda / h);
  const double stretch = std::sqrt(1.0 + (y / lambda) * (y / lambda));
  auto branch_angle = [&](double sign, const char* name) {
    const double arg = stretch * std::cos(dtheta + sign * r.delta);
    if (std::abs(arg) > 1.0 + 1e-12) {
      std::ostringstream os;
      os << "angles: psi" << name << " out of domain, |sqrt(1+(y/lambda)^2) cos(dtheta"
         << name << "delta)| = " << std::abs(arg) << " > 1";
      throw InvalidArgument(os.str());
    }
    return std::acos(std::clamp(arg, -1.0, 1.0));
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.psi_plus = branch != AngleBranch::Minus ? branch_angle(1.0, "+") : nan;
  r.psi_minus = branch != AngleBranch::Plus ? branch_angle(-1.0, "-") : nan;
  return r;
}

}  // namespace oscenv
