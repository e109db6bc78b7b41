#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "oscenv/fp_solver.hpp"
#include "oscenv/grid.hpp"
#include "oscenv/model.hpp"
#include "oscenv/stability.hpp"

namespace oscenv {

struct QStepOptions {
  StepOptions step;
  /// Rotation coupling +u2 qr -> qi, -u2 qi -> qr.
  bool coupling = true;
  /// Coefficient of u1 in the source term (5 for Q, 4 reproduces P).
  double source = 5.0;
};

/// Advances the pair (qr, qi) on a fixed grid with a fixed step.
class QStepper {
 public:
  QStepper(const EnvConfig& cfg, const Grid2D& grid, double dt, QStepOptions opts = {});

  void step(ComplexField& field);

  [[nodiscard]] const StabilityReport& report() const { return report_; }
  [[nodiscard]] double dt() const { return dt_; }

 private:
  void stage(std::span<const double> re, std::span<const double> im, double t,
             std::span<double> out_re, std::span<double> out_im);

  EnvConfig cfg_;
  Grid2D grid_;
  double dt_;
  QStepOptions opts_;
  StabilityReport report_;
  std::vector<double> r1_, i1_, r2_, i2_, rt_, it_;
};

[[nodiscard]] ComplexField q_step(const ComplexField& field, const EnvConfig& cfg, double dt,
                                  const QStepOptions& opts = {});

/// Largest |source| of the Q update on the grid: max(source |u1| + |u2|).
[[nodiscard]] double q_source_bound(const Grid2D& grid, double source = 5.0, bool coupling = true);

struct NormalizedQ {
  ComplexField field;
  double beta = 0.0;
};

/// Divides both components by beta = integral of (qr + qi). Throws
/// DensityError if |beta| < 1e-300 or beta is not finite.
[[nodiscard]] NormalizedQ normalize_q(const ComplexField& field, const WorkerPool* pool = nullptr);

/// max |qi(u1, -u2) - qr(u1, u2)| over all nodes (u2-symmetric grid).
[[nodiscard]] double reflection_exchange_check(const ComplexField& field);

struct LambdaSample {
  double t = 0.0;
  complex lambda;
  complex xi;  ///< xi0(t0) * lambda
};

/// Lambda_Q(t) = (int qr + i int qi) / alpha(t) for each snapshot, matched to
/// alphas by position; times must agree to 1e-9. Throws DensityError for
/// alpha <= 0.
[[nodiscard]] std::vector<LambdaSample> lambda_q(
    const std::vector<std::pair<double, ComplexField>>& snapshots,
    const std::vector<std::pair<double, double>>& alphas, complex xi0_t0 = 1.0);

struct QSnapshot {
  double t = 0.0;
  ComplexField field;  ///< normalized by beta
  double beta = 0.0;
  double alpha = 0.0;  ///< P mass at the same step
};

struct QRunOptions {
  QStepOptions q;
  /// Initial Gaussian for P, qr and qi; defaults to GaussianInit::at_phase_point(cfg).
  std::optional<GaussianInit> init;
  /// Scales of the initial qr and qi relative to the Gaussian.
  double init_qr = 1.0;
  double init_qi = 1.0;
  double series_interval = 0.1;
  complex xi0_t0 = 1.0;
};

struct QRun {
  std::vector<QSnapshot> snapshots;
  std::vector<LambdaSample> lambda_series;
};

/// Evolves Q together with a P run on the same grid and step and records
/// normalized snapshots and the Lambda_Q series.
[[nodiscard]] QRun run_q(const EnvConfig& cfg, const Grid2D& grid, double dt,
                         const std::vector<double>& snapshot_times,
                         const QRunOptions& opts = {});

}  // namespace oscenv
