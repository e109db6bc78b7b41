#pragma once

#include <utility>
#include <vector>

#include "oscenv/model.hpp"

namespace oscenv {

enum class Axis { U1, U2 };

/// A 1-D profile on a uniform node-centred line along one axis. Nodes are
/// placed symmetrically about the midpoint, like Grid2D.
struct AxisProfile {
  Axis axis = Axis::U1;
  double x_min = -6.0;
  double x_max = 6.0;
  std::vector<double> values;
  double t = 0.0;

  static AxisProfile make(Axis axis, double x_min, double x_max, int n, double t = 0.0);

  [[nodiscard]] int size() const { return static_cast<int>(values.size()); }
  [[nodiscard]] double dx() const { return (x_max - x_min) / (size() - 1); }
  [[nodiscard]] double x(int i) const;
  [[nodiscard]] bool same_line(const AxisProfile& o) const {
    return axis == o.axis && x_min == o.x_min && x_max == o.x_max && size() == o.size();
  }
};

/// sqrt(sigma) exp(-omega ((x - center)/a)^2) with omega = pi sigma a^2: the
/// one-dimensional counterpart of the default Gaussian, with unit mass.
[[nodiscard]] AxisProfile axis_gaussian(Axis axis, double x_min, double x_max, int n,
                                        double center = 0.0, double sigma = 500.0,
                                        double a = 0.5, double t = 0.0);

/// Trapezoidal integral of a profile.
[[nodiscard]] double axis_mass(const AxisProfile& p);

/// Forward-Euler step of dQ/dt = eps_r Q'' + (u1^2 + Omega0^2) Q' + 5 u1 Q
/// with zero end values. Throws StabilityViolation if eps_r dt / du^2 > 1/2.
[[nodiscard]] AxisProfile axis1_step(const AxisProfile& profile, const EnvConfig& cfg,
                                     double dt);

/// Forward-Euler step of the pair
///   dQ/dt = eps_i Q'' + (Omega0^2 - u2^2)/2 Q + u2 M
///   dM/dt = eps_i M'' + (Omega0^2 - u2^2)/2 M + u2 Q
/// where M carries the reflected-argument copy. Both are advanced from the
/// same time level with zero end values.
[[nodiscard]] std::pair<AxisProfile, AxisProfile> axis2_step(const AxisProfile& profile,
                                                             const AxisProfile& mirror,
                                                             const EnvConfig& cfg, double dt);

/// Neumann derivative traces (1 * Q1, 1/2 * Q2) after normalizing each
/// profile to unit mass. An identically zero profile yields a zero trace;
/// a nonzero profile without positive mass throws DensityError.
[[nodiscard]] std::pair<AxisProfile, AxisProfile> neumann_boundary_values(
    const AxisProfile& axis1, const AxisProfile& axis2);

}  // namespace oscenv
