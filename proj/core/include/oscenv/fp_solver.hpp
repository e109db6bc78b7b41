#pragma once

#include <optional>
#include <vector>

#include "oscenv/grid.hpp"
#include "oscenv/model.hpp"
#include "oscenv/stability.hpp"

namespace oscenv {

class WorkerPool;

/// sigma * exp(-omega [((u1 - c1)/a)^2 + ((u2 - c2)/b)^2]) with omega = pi sigma a^2,
/// which has unit mass when a = b.
struct GaussianInit {
  double sigma = 500.0;
  double a = 0.5;
  double b = 0.5;
  double center_u1 = 0.0;
  double center_u2 = 0.0;

  [[nodiscard]] double omega() const;
  /// Standard deviations along u1 and u2.
  [[nodiscard]] double sd_u1() const;
  [[nodiscard]] double sd_u2() const;
  void validate() const;

  /// Default Gaussian centred on the noise-free phase point (0, Omega0(t0)).
  static GaussianInit at_phase_point(const EnvConfig& cfg);
};

/// Samples the Gaussian at time t. Throws InvalidArgument unless the window
/// centre +- 3 standard deviations lies inside the grid on both axes.
[[nodiscard]] Field2D init_gaussian(const Grid2D& grid, const GaussianInit& init = {},
                                    double t = 0.0);
[[nodiscard]] Field2D init_gaussian(const Grid2D& grid, double sigma, double a, double b);

struct StepOptions {
  Integrator integrator = Integrator::SspRk3;
  const WorkerPool* pool = nullptr;
};

/// Advances P fields on a fixed grid with a fixed step. The stability check
/// runs once, at construction.
class FpStepper {
 public:
  FpStepper(const EnvConfig& cfg, const Grid2D& grid, double dt, StepOptions opts = {});

  /// Advances `field` by one step in place. Throws NumericalFailure on
  /// non-finite output and InvalidArgument on a grid mismatch or a nonzero
  /// boundary ring.
  void step(Field2D& field);

  [[nodiscard]] const StabilityReport& report() const { return report_; }
  [[nodiscard]] double dt() const { return dt_; }

 private:
  void stage(std::span<const double> in, double t, std::span<double> out);

  EnvConfig cfg_;
  Grid2D grid_;
  double dt_;
  StepOptions opts_;
  StabilityReport report_;
  std::vector<double> s1_, s2_, tmp_;
};

/// One step of the P equation (convenience wrapper over FpStepper).
[[nodiscard]] Field2D fp_step(const Field2D& field, const EnvConfig& cfg, double dt,
                              const StepOptions& opts = {});

struct Normalized {
  Field2D field;
  double alpha = 0.0;
};

/// Divides by the trapezoidal mass. Throws DensityError if the mass is not
/// positive and finite.
[[nodiscard]] Normalized normalize(const Field2D& field, const WorkerPool* pool = nullptr);

/// Step index of the last step not exceeding `target` when stepping from t0.
[[nodiscard]] long long steps_until(double t0, double target, double dt);

struct FpSnapshot {
  double t = 0.0;
  Field2D field;  ///< normalized
  double alpha = 0.0;
};

struct FpRunOptions {
  StepOptions step;
  /// Initial data; defaults to GaussianInit::at_phase_point(cfg).
  std::optional<GaussianInit> init;
  /// Spacing of the (t, alpha) series in time units; 0 records every step.
  double series_interval = 0.1;
};

struct FpRun {
  std::vector<FpSnapshot> snapshots;
  std::vector<std::pair<double, double>> alpha_series;
};

/// Steps from cfg.t0 and records normalized snapshots at the last step not
/// exceeding each requested time. Step errors are rethrown with the time.
[[nodiscard]] FpRun run_fp(const EnvConfig& cfg, const Grid2D& grid, double dt,
                           const std::vector<double>& snapshot_times,
                           const FpRunOptions& opts = {});

}  // namespace oscenv
