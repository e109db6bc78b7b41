#include "oscenv/stability.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "oscenv/errors.hpp"

namespace oscenv {

std::string_view to_string(Integrator integrator) {
  switch (integrator) {
    case Integrator::ForwardEuler:
      return "euler";
    case Integrator::SspRk3:
      return "ssp-rk3";
  }
  return "?";
}

Integrator integrator_from_string(std::string_view name) {
  if (name == "euler") return Integrator::ForwardEuler;
  if (name == "ssp-rk3") return Integrator::SspRk3;
  throw InvalidArgument("unknown integrator '" + std::string(name) +
                        "' (expected euler or ssp-rk3)");
}

std::string_view to_string(StabilityBound bound) {
  switch (bound) {
    case StabilityBound::None:
      return "none";
    case StabilityBound::Diffusive:
      return "diffusive (r1 + r2 <= 1/2)";
    case StabilityBound::Advective:
      return "advective Courant (<= 1)";
    case StabilityBound::Source:
      return "source (dt max|s| <= 1)";
    case StabilityBound::Amplification:
      return "amplification factor (<= 1)";
  }
  return "?";
}

std::string StabilityReport::describe() const {
  std::ostringstream os;
  if (ok()) {
    os << "stable: r1+r2=" << r1 + r2 << " courant=" << courant
       << " |R|max=" << amplification << " (max dt " << max_dt << ")";
  } else {
    os << "violated " << to_string(violated) << ": value " << value
       << " > limit " << limit << "; maximal admissible dt = " << max_dt;
  }
  return os.str();
}

DriftBounds drift_bounds(const EnvConfig& cfg, const Grid2D& g) {
  const double w_lo = cfg.omega_min();
  const double w_hi = cfg.omega_max();
  const double a1 = std::max(std::abs(g.u1_min), std::abs(g.u1_max));
  const double a2 = std::max(std::abs(g.u2_min), std::abs(g.u2_max));
  auto min_sq = [](double lo, double hi) {
    return (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(lo * lo, hi * hi);
  };
  const double k1_hi = a1 * a1 - min_sq(g.u2_min, g.u2_max) + w_hi * w_hi;
  const double k1_lo = min_sq(g.u1_min, g.u1_max) - a2 * a2 + w_lo * w_lo;
  return {std::max(std::abs(k1_hi), std::abs(k1_lo)), 2.0 * a1 * a2};
}

namespace {

struct Coefficients {
  double r1, r2, c1, c2;
};

Coefficients coefficients(const EnvConfig& cfg, const Grid2D& g, double dt) {
  const DriftBounds k = drift_bounds(cfg, g);
  return {cfg.eps_r * dt / (g.du1() * g.du1()), cfg.eps_i * dt / (g.du2() * g.du2()),
          k.k1 * dt / g.du1(), k.k2 * dt / g.du2()};
}

double max_amplification(const Coefficients& c, Integrator integrator) {
  constexpr int n = 64;
  double worst = 0.0;
  for (int a = 0; a <= n; ++a) {
    const double th1 = std::numbers::pi * a / n;
    for (int b = -n; b <= n; ++b) {
      const double th2 = std::numbers::pi * b / n;
      const double re = -2.0 * c.r1 * (1.0 - std::cos(th1)) - 2.0 * c.r2 * (1.0 - std::cos(th2));
      const double im = c.c1 * std::sin(th1) + c.c2 * std::sin(th2);
      const std::complex<double> z(re, im);
      std::complex<double> R;
      if (integrator == Integrator::ForwardEuler) {
        R = 1.0 + z;
      } else {
        R = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
      }
      worst = std::max(worst, std::abs(R));
    }
  }
  return worst;
}

constexpr double kAmplificationTolerance = 1e-12;

}  // namespace

StabilityReport cfl_check(const EnvConfig& cfg, const Grid2D& grid, double dt,
                          Integrator integrator, double source_max) {
  cfg.validate();
  grid.validate();
  if (!(dt > 0.0)) throw InvalidArgument("cfl_check: dt must be > 0");
  if (source_max < 0.0) {
    source_max = 4.0 * std::max(std::abs(grid.u1_min), std::abs(grid.u1_max));
  }

  StabilityReport rep;
  const Coefficients c = coefficients(cfg, grid, dt);
  rep.r1 = c.r1;
  rep.r2 = c.r2;
  rep.courant = 0.5 * c.c1 + c.c2;
  rep.amplification = max_amplification(c, integrator);

  // Every bound except amplification is linear in dt.
  const double diff_rate = (c.r1 + c.r2) / dt;
  const double adv_rate = rep.courant / dt;
  double dt_max = std::numeric_limits<double>::infinity();
  if (diff_rate > 0.0) dt_max = std::min(dt_max, 0.5 / diff_rate);
  if (adv_rate > 0.0) dt_max = std::min(dt_max, 1.0 / adv_rate);
  if (source_max > 0.0) dt_max = std::min(dt_max, 1.0 / source_max);
  if (!std::isfinite(dt_max)) dt_max = 1.0;

  auto amp_ok = [&](double h) {
    return max_amplification(coefficients(cfg, grid, h), integrator) <=
           1.0 + kAmplificationTolerance;
  };
  if (!amp_ok(dt_max)) {
    double lo = 0.0;
    double hi = dt_max;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (amp_ok(mid) ? lo : hi) = mid;
    }
    dt_max = lo;
  }
  rep.max_dt = dt_max;

  auto flag = [&](StabilityBound b, double value, double limit) {
    if (rep.ok() && value > limit) {
      rep.violated = b;
      rep.value = value;
      rep.limit = limit;
    }
  };
  flag(StabilityBound::Diffusive, c.r1 + c.r2, 0.5);
  flag(StabilityBound::Advective, rep.courant, 1.0);
  flag(StabilityBound::Source, dt * source_max, 1.0);
  flag(StabilityBound::Amplification, rep.amplification, 1.0 + kAmplificationTolerance);
  return rep;
}

void require_stable(const StabilityReport& report, std::string_view where) {
  if (!report.ok()) {
    throw StabilityViolation(std::string(where) + ": " + report.describe());
  }
}

}  // namespace oscenv
