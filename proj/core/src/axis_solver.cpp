#include "oscenv/axis_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oscenv/errors.hpp"

namespace oscenv {

AxisProfile AxisProfile::make(Axis axis, double x_min, double x_max, int n, double t) {
  if (n < 3 || !(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw InvalidArgument("AxisProfile: need n >= 3 nodes on a finite nonempty interval");
  }
  AxisProfile p{axis, x_min, x_max, std::vector<double>(static_cast<std::size_t>(n), 0.0), t};
  return p;
}

double AxisProfile::x(int i) const {
  return 0.5 * (x_min + x_max) + (i - 0.5 * (size() - 1)) * dx();
}

AxisProfile axis_gaussian(Axis axis, double x_min, double x_max, int n, double center,
                          double sigma, double a, double t) {
  if (!(sigma > 0.0) || !(a > 0.0)) throw InvalidArgument("axis_gaussian: sigma, a must be > 0");
  AxisProfile p = AxisProfile::make(axis, x_min, x_max, n, t);
  const double w = std::numbers::pi * sigma * a * a;
  for (int i = 1; i < n - 1; ++i) {
    const double z = (p.x(i) - center) / a;
    p.values[static_cast<std::size_t>(i)] = std::sqrt(sigma) * std::exp(-w * z * z);
  }
  return p;
}

double axis_mass(const AxisProfile& p) {
  const int n = p.size();
  double s = 0.5 * (p.values.front() + p.values.back());
  for (int i = 1; i < n - 1; ++i) s += p.values[static_cast<std::size_t>(i)];
  return s * p.dx();
}

namespace {

void check_profile(const AxisProfile& p, Axis axis, const char* where) {
  if (p.axis != axis) throw InvalidArgument(std::string(where) + ": wrong axis");
  if (p.size() < 3) throw InvalidArgument(std::string(where) + ": profile too short");
  if (p.values.front() != 0.0 || p.values.back() != 0.0) {
    throw InvalidArgument(std::string(where) + ": end values must be zero");
  }
}

void check_diffusion(double eps, double dt, double dx, const char* where) {
  if (!(dt > 0.0)) throw InvalidArgument(std::string(where) + ": dt must be positive");
  const double r = eps * dt / (dx * dx);
  if (r > 0.5) {
    std::ostringstream os;
    os << where << ": diffusion number " << r << " > 1/2; maximal admissible dt = "
       << 0.5 * dx * dx / eps;
    throw StabilityViolation(os.str());
  }
}

void check_finite(const AxisProfile& p, const char* where) {
  for (double v : p.values) {
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << where << ": non-finite value at t=" << p.t;
      throw NumericalFailure(os.str());
    }
  }
}

}  // namespace

AxisProfile axis1_step(const AxisProfile& p, const EnvConfig& cfg, double dt) {
  check_profile(p, Axis::U1, "axis1_step");
  const double h = p.dx();
  check_diffusion(cfg.eps_r, dt, h, "axis1_step");
  const double r = cfg.eps_r * dt / (h * h);
  const double w = omega0(p.t, cfg);
  AxisProfile out = p;
  const auto& q = p.values;
  for (int i = 1; i < p.size() - 1; ++i) {
    const auto s = static_cast<std::size_t>(i);
    const double u = p.x(i);
    const double a = dt / (2.0 * h) * (u * u + w * w);
    out.values[s] = q[s] + r * ((q[s + 1] + q[s - 1]) - 2.0 * q[s]) + dt * (5.0 * u * q[s]) +
                    a * (q[s + 1] - q[s - 1]);
  }
  out.t = p.t + dt;
  check_finite(out, "axis1_step");
  return out;
}

std::pair<AxisProfile, AxisProfile> axis2_step(const AxisProfile& p, const AxisProfile& m,
                                               const EnvConfig& cfg, double dt) {
  check_profile(p, Axis::U2, "axis2_step");
  check_profile(m, Axis::U2, "axis2_step");
  if (!p.same_line(m) || p.t != m.t) {
    throw InvalidArgument("axis2_step: mirror profile is on a different grid or time");
  }
  const double h = p.dx();
  check_diffusion(cfg.eps_i, dt, h, "axis2_step");
  const double r = cfg.eps_i * dt / (h * h);
  const double w = omega0(p.t, cfg);
  AxisProfile op = p;
  AxisProfile om = m;
  const auto& a = p.values;
  const auto& b = m.values;
  for (int i = 1; i < p.size() - 1; ++i) {
    const auto s = static_cast<std::size_t>(i);
    const double u = p.x(i);
    const double c = 0.5 * (w * w - u * u);
    op.values[s] = a[s] + r * ((a[s + 1] + a[s - 1]) - 2.0 * a[s]) + dt * (c * a[s] + u * b[s]);
    om.values[s] = b[s] + r * ((b[s + 1] + b[s - 1]) - 2.0 * b[s]) + dt * (c * b[s] + u * a[s]);
  }
  op.t = om.t = p.t + dt;
  check_finite(op, "axis2_step");
  check_finite(om, "axis2_step");
  return {op, om};
}

namespace {

AxisProfile scaled_unit(const AxisProfile& p, double factor, const char* name) {
  AxisProfile out = p;
  if (std::all_of(p.values.begin(), p.values.end(), [](double v) { return v == 0.0; })) {
    return out;
  }
  const double mass = axis_mass(p);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    std::ostringstream os;
    os << "neumann_boundary_values: " << name << " profile has mass " << mass;
    throw DensityError(os.str());
  }
  for (double& v : out.values) v = factor * v / mass;
  return out;
}

}  // namespace

std::pair<AxisProfile, AxisProfile> neumann_boundary_values(const AxisProfile& axis1,
                                                            const AxisProfile& axis2) {
  if (axis1.axis != Axis::U1 || axis2.axis != Axis::U2) {
    throw InvalidArgument("neumann_boundary_values: expected (u1, u2) profiles");
  }
  return {scaled_unit(axis1, 1.0, "u1"), scaled_unit(axis2, 0.5, "u2")};
}

}  // namespace oscenv
