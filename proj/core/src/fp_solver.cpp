#include "oscenv/fp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oscenv/errors.hpp"
#include "oscenv/parallel.hpp"
#include "stencil.hpp"

namespace oscenv {

double GaussianInit::omega() const { return std::numbers::pi * sigma * a * a; }
double GaussianInit::sd_u1() const { return a / std::sqrt(2.0 * omega()); }
double GaussianInit::sd_u2() const { return b / std::sqrt(2.0 * omega()); }

void GaussianInit::validate() const {
  if (!(sigma > 0.0) || !(a > 0.0) || !(b > 0.0) || !std::isfinite(sigma) ||
      !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("GaussianInit: sigma, a, b must be positive and finite");
  }
}

GaussianInit GaussianInit::at_phase_point(const EnvConfig& cfg) {
  GaussianInit g;
  g.center_u2 = omega0(cfg.t0, cfg);
  return g;
}

Field2D init_gaussian(const Grid2D& grid, const GaussianInit& init, double t) {
  grid.validate();
  init.validate();
  const double s1 = 3.0 * init.sd_u1();
  const double s2 = 3.0 * init.sd_u2();
  if (init.center_u1 - s1 < grid.u1_min || init.center_u1 + s1 > grid.u1_max ||
      init.center_u2 - s2 < grid.u2_min || init.center_u2 + s2 > grid.u2_max) {
    std::ostringstream os;
    os << "init_gaussian: grid does not cover 6 standard deviations around ("
       << init.center_u1 << ", " << init.center_u2 << ")";
    throw InvalidArgument(os.str());
  }
  Field2D f(grid, t);
  const double w = init.omega();
  for (int k = 0; k < grid.L; ++k) {
    const double y = (grid.u2(k) - init.center_u2) / init.b;
    for (int j = 0; j < grid.M; ++j) {
      const double x = (grid.u1(j) - init.center_u1) / init.a;
      f.at(j, k) = init.sigma * std::exp(-w * (x * x + y * y));
    }
  }
  zero_boundary(grid, f.values);
  return f;
}

Field2D init_gaussian(const Grid2D& grid, double sigma, double a, double b) {
  return init_gaussian(grid, GaussianInit{sigma, a, b, 0.0, 0.0});
}

FpStepper::FpStepper(const EnvConfig& cfg, const Grid2D& grid, double dt, StepOptions opts)
    : cfg_(cfg), grid_(grid), dt_(dt), opts_(opts) {
  cfg_.validate();
  grid_.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("fp_step: dt must be positive");
  report_ = cfl_check(cfg_, grid_, dt_, opts_.integrator);
  require_stable(report_, "fp_step");
  s1_.resize(grid_.size());
  if (opts_.integrator == Integrator::SspRk3) {
    s2_.resize(grid_.size());
    tmp_.resize(grid_.size());
  }
}

void FpStepper::stage(std::span<const double> in, double t, std::span<double> out) {
  const auto c = detail::StageCoeffs::make(cfg_, grid_, dt_, 4.0);
  const double w = omega0(t, cfg_);
  if (!detail::central_stage<false, false>(grid_, c, w * w, in, {}, 0.0, out, opts_.pool)) {
    std::ostringstream os;
    os << "fp_step: non-finite value produced at t=" << t;
    throw NumericalFailure(os.str());
  }
}

void FpStepper::step(Field2D& f) {
  if (!(f.grid == grid_)) throw InvalidArgument("fp_step: field grid differs from stepper grid");
  if (max_abs_boundary(grid_, f.values) != 0.0) {
    throw InvalidArgument("fp_step: boundary ring must be zero");
  }
  const double t = f.t;
  if (opts_.integrator == Integrator::ForwardEuler) {
    stage(f.values, t, s1_);
    f.values.swap(s1_);
  } else {
    stage(f.values, t, s1_);
    stage(s1_, t + dt_, tmp_);
    detail::combine(f.values, 0.75, tmp_, 0.25, s2_, opts_.pool);
    stage(s2_, t + 0.5 * dt_, tmp_);
    detail::combine(f.values, 1.0 / 3.0, tmp_, 2.0 / 3.0, f.values, opts_.pool);
  }
  f.t = t + dt_;
}

Field2D fp_step(const Field2D& field, const EnvConfig& cfg, double dt, const StepOptions& opts) {
  FpStepper stepper(cfg, field.grid, dt, opts);
  Field2D out = field;
  stepper.step(out);
  return out;
}

Normalized normalize(const Field2D& field, const WorkerPool* pool) {
  const double alpha = trapezoid(field, pool);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    std::ostringstream os;
    os << "normalize: mass " << alpha << " at t=" << field.t << " is not positive";
    throw DensityError(os.str());
  }
  Normalized n{field, alpha};
  for (double& v : n.field.values) v /= alpha;
  return n;
}

long long steps_until(double t0, double target, double dt) {
  return static_cast<long long>(std::floor((target - t0) / dt + 1e-9));
}

FpRun run_fp(const EnvConfig& cfg, const Grid2D& grid, double dt,
             const std::vector<double>& snapshot_times, const FpRunOptions& opts) {
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    if (snapshot_times[i] < cfg.t0 || (i && !(snapshot_times[i] > snapshot_times[i - 1]))) {
      throw InvalidArgument("run_fp: snapshot times must be increasing and >= t0");
    }
  }
  FpStepper stepper(cfg, grid, dt, opts.step);
  const GaussianInit init = opts.init.value_or(GaussianInit::at_phase_point(cfg));
  Field2D field = init_gaussian(grid, init, cfg.t0);

  const long long stride =
      opts.series_interval > 0.0
          ? std::max(1LL, static_cast<long long>(std::llround(opts.series_interval / dt)))
          : 1LL;
  FpRun run;
  long long n = 0;
  auto record = [&] {
    field.t = cfg.t0 + static_cast<double>(n) * dt;
    if (n % stride == 0) run.alpha_series.emplace_back(field.t, trapezoid(field, opts.step.pool));
  };
  record();
  for (double target : snapshot_times) {
    const long long goal = steps_until(cfg.t0, target, dt);
    try {
      while (n < goal) {
        stepper.step(field);
        ++n;
        record();
      }
      auto [normed, alpha] = normalize(field, opts.step.pool);
      run.snapshots.push_back({field.t, std::move(normed), alpha});
    } catch (const Error& e) {
      std::ostringstream os;
      os << "run_fp failed near t=" << field.t << ": " << e.what();
      throw NumericalFailure(os.str());
    }
  }
  return run;
}

}  // namespace oscenv
