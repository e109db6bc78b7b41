#pragma once

#include <string>
#include <string_view>

#include "oscenv/grid.hpp"
#include "oscenv/model.hpp"

namespace oscenv {

/// Time integrator wrapped around the explicit central-difference operator.
///
/// ForwardEuler is the single-stage update; SspRk3 is the three-stage
/// strong-stability-preserving Runge-Kutta scheme built from the same stage.
/// Central advection under forward Euler needs dt <= 2 eps / |k|^2, which
/// is far below the advective Courant limit when eps is small.
enum class Integrator { ForwardEuler, SspRk3 };

[[nodiscard]] std::string_view to_string(Integrator integrator);
[[nodiscard]] Integrator integrator_from_string(std::string_view name);

enum class StabilityBound { None, Diffusive, Advective, Source, Amplification };

[[nodiscard]] std::string_view to_string(StabilityBound bound);

/// Outcome of a step-size check.
struct StabilityReport {
  StabilityBound violated = StabilityBound::None;
  double value = 0.0;   ///< measured quantity of the violated bound
  double limit = 0.0;   ///< its admissible maximum
  double max_dt = 0.0;  ///< largest dt satisfying every bound

  double r1 = 0.0;
  double r2 = 0.0;
  double courant = 0.0;  ///< dt max|k1|/(2 du1) + dt max|k2|/du2
  double amplification = 0.0;  ///< max |R(z)| over frozen-coefficient modes

  [[nodiscard]] bool ok() const { return violated == StabilityBound::None; }
  explicit operator bool() const { return ok(); }
  [[nodiscard]] std::string describe() const;
};

/// Bounds checked, in order:
///   diffusive      r1 + r2 <= 1/2
///   advective      dt max|k1|/(2 du1) + dt max|k2|/du2 <= 1, with the
///                  maxima taken at the domain corners over all Omega0(t)
///   source         dt max|source| <= 1
///   amplification  frozen-coefficient von Neumann factor of `integrator`
///                  stays <= 1 (source excluded)
/// `source_max` defaults to max 4|u1| (the P equation).
[[nodiscard]] StabilityReport cfl_check(const EnvConfig& cfg, const Grid2D& grid,
                                        double dt,
                                        Integrator integrator = Integrator::SspRk3,
                                        double source_max = -1.0);

/// Largest |k1| and |k2| over the grid and all t.
struct DriftBounds {
  double k1 = 0.0;
  double k2 = 0.0;
};
[[nodiscard]] DriftBounds drift_bounds(const EnvConfig& cfg, const Grid2D& grid);

/// Throws StabilityViolation with the report's description unless ok.
void require_stable(const StabilityReport& report, std::string_view where);

}  // namespace oscenv
