#include "oscenv/q_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oscenv/errors.hpp"
#include "oscenv/parallel.hpp"
#include "stencil.hpp"

namespace oscenv {

double q_source_bound(const Grid2D& g, double source, bool coupling) {
  const double u1 = std::max(std::abs(g.u1_min), std::abs(g.u1_max));
  const double u2 = std::max(std::abs(g.u2_min), std::abs(g.u2_max));
  return std::abs(source) * u1 + (coupling ? u2 : 0.0);
}

QStepper::QStepper(const EnvConfig& cfg, const Grid2D& grid, double dt, QStepOptions opts)
    : cfg_(cfg), grid_(grid), dt_(dt), opts_(opts) {
  cfg_.validate();
  grid_.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("q_step: dt must be positive");
  report_ = cfl_check(cfg_, grid_, dt_, opts_.step.integrator,
                      q_source_bound(grid_, opts_.source, opts_.coupling));
  require_stable(report_, "q_step");
  for (auto* v : {&r1_, &i1_, &rt_, &it_}) v->resize(grid_.size());
  if (opts_.step.integrator == Integrator::SspRk3) {
    r2_.resize(grid_.size());
    i2_.resize(grid_.size());
  }
}

void QStepper::stage(std::span<const double> re, std::span<const double> im, double t,
                     std::span<double> out_re, std::span<double> out_im) {
  const auto c = detail::StageCoeffs::make(cfg_, grid_, dt_, opts_.source);
  const double w = omega0(t, cfg_);
  const auto* pool = opts_.step.pool;
  const double wsq = w * w;
  bool ok;
  if (opts_.coupling) {
    ok = detail::central_stage<true, true>(grid_, c, wsq, re, im, -1.0, out_re, pool);
    ok = detail::central_stage<true, true>(grid_, c, wsq, im, re, 1.0, out_im, pool) && ok;
  } else if (opts_.source != 4.0) {
    ok = detail::central_stage<true, false>(grid_, c, wsq, re, {}, 0.0, out_re, pool);
    ok = detail::central_stage<true, false>(grid_, c, wsq, im, {}, 0.0, out_im, pool) && ok;
  } else {
    ok = detail::central_stage<false, false>(grid_, c, wsq, re, {}, 0.0, out_re, pool);
    ok = detail::central_stage<false, false>(grid_, c, wsq, im, {}, 0.0, out_im, pool) && ok;
  }
  if (!ok) {
    std::ostringstream os;
    os << "q_step: non-finite value produced at t=" << t;
    throw NumericalFailure(os.str());
  }
}

void QStepper::step(ComplexField& f) {
  if (!(f.grid == grid_)) throw InvalidArgument("q_step: field grid differs from stepper grid");
  if (max_abs_boundary(grid_, f.qr) != 0.0 || max_abs_boundary(grid_, f.qi) != 0.0) {
    throw InvalidArgument("q_step: boundary rings must be zero");
  }
  const double t = f.t;
  const auto* pool = opts_.step.pool;
  if (opts_.step.integrator == Integrator::ForwardEuler) {
    stage(f.qr, f.qi, t, r1_, i1_);
    f.qr.swap(r1_);
    f.qi.swap(i1_);
  } else {
    stage(f.qr, f.qi, t, r1_, i1_);
    stage(r1_, i1_, t + dt_, rt_, it_);
    detail::combine(f.qr, 0.75, rt_, 0.25, r2_, pool);
    detail::combine(f.qi, 0.75, it_, 0.25, i2_, pool);
    stage(r2_, i2_, t + 0.5 * dt_, rt_, it_);
    detail::combine(f.qr, 1.0 / 3.0, rt_, 2.0 / 3.0, f.qr, pool);
    detail::combine(f.qi, 1.0 / 3.0, it_, 2.0 / 3.0, f.qi, pool);
  }
  f.t = t + dt_;
}

ComplexField q_step(const ComplexField& field, const EnvConfig& cfg, double dt,
                    const QStepOptions& opts) {
  QStepper stepper(cfg, field.grid, dt, opts);
  ComplexField out = field;
  stepper.step(out);
  return out;
}

NormalizedQ normalize_q(const ComplexField& field, const WorkerPool* pool) {
  const double beta = trapezoid(field.grid, field.qr, pool) + trapezoid(field.grid, field.qi, pool);
  if (!std::isfinite(beta) || std::abs(beta) < 1e-300) {
    std::ostringstream os;
    os << "normalize_q: degenerate mass beta=" << beta << " at t=" << field.t;
    throw DensityError(os.str());
  }
  NormalizedQ n{field, beta};
  for (double& v : n.field.qr) v /= beta;
  for (double& v : n.field.qi) v /= beta;
  return n;
}

double reflection_exchange_check(const ComplexField& f) {
  const Grid2D& g = f.grid;
  if (!g.symmetric_in_u2()) {
    throw InvalidArgument("reflection_exchange_check: grid not symmetric in u2");
  }
  double m = 0.0;
  for (int k = 0; k < g.L; ++k) {
    const int km = g.L - 1 - k;
    for (int j = 0; j < g.M; ++j) {
      m = std::max(m, std::abs(f.qi[g.index(j, km)] - f.qr[g.index(j, k)]));
    }
  }
  return m;
}

namespace {

LambdaSample make_lambda(double t, double int_r, double int_i, double alpha, complex xi0) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    std::ostringstream os;
    os << "lambda_q: P mass alpha=" << alpha << " at t=" << t << " is not positive";
    throw DensityError(os.str());
  }
  const complex lam(int_r / alpha, int_i / alpha);
  return {t, lam, xi0 * lam};
}

}  // namespace

std::vector<LambdaSample> lambda_q(const std::vector<std::pair<double, ComplexField>>& snapshots,
                                   const std::vector<std::pair<double, double>>& alphas,
                                   complex xi0_t0) {
  if (snapshots.size() != alphas.size()) {
    throw InvalidArgument("lambda_q: snapshot and alpha series differ in length");
  }
  std::vector<LambdaSample> out;
  out.reserve(snapshots.size());
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    const auto& [t, q] = snapshots[i];
    if (std::abs(t - alphas[i].first) > 1e-9) {
      throw InvalidArgument("lambda_q: snapshot and alpha times do not match");
    }
    out.push_back(make_lambda(t, trapezoid(q.grid, q.qr), trapezoid(q.grid, q.qi),
                              alphas[i].second, xi0_t0));
  }
  return out;
}

QRun run_q(const EnvConfig& cfg, const Grid2D& grid, double dt,
           const std::vector<double>& snapshot_times, const QRunOptions& opts) {
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    if (snapshot_times[i] < cfg.t0 || (i && !(snapshot_times[i] > snapshot_times[i - 1]))) {
      throw InvalidArgument("run_q: snapshot times must be increasing and >= t0");
    }
  }
  const auto* pool = opts.q.step.pool;
  FpStepper pstep(cfg, grid, dt, opts.q.step);
  QStepper qstep(cfg, grid, dt, opts.q);
  const GaussianInit init = opts.init.value_or(GaussianInit::at_phase_point(cfg));
  Field2D p = init_gaussian(grid, init, cfg.t0);
  ComplexField q(grid, cfg.t0);
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    q.qr[i] = opts.init_qr * p.values[i];
    q.qi[i] = opts.init_qi * p.values[i];
  }

  const long long stride =
      opts.series_interval > 0.0
          ? std::max(1LL, static_cast<long long>(std::llround(opts.series_interval / dt)))
          : 1LL;
  QRun run;
  long long n = 0;
  auto sync_time = [&] {
    const double t = cfg.t0 + static_cast<double>(n) * dt;
    p.t = t;
    q.t = t;
  };
  auto record = [&] {
    if (n % stride != 0) return;
    run.lambda_series.push_back(make_lambda(q.t, trapezoid(grid, q.qr, pool),
                                            trapezoid(grid, q.qi, pool),
                                            trapezoid(grid, p.values, pool), opts.xi0_t0));
  };
  record();
  for (double target : snapshot_times) {
    const long long goal = steps_until(cfg.t0, target, dt);
    try {
      while (n < goal) {
        pstep.step(p);
        qstep.step(q);
        ++n;
        sync_time();
        record();
      }
      auto [normed, beta] = normalize_q(q, pool);
      run.snapshots.push_back({q.t, std::move(normed), beta, trapezoid(grid, p.values, pool)});
    } catch (const Error& e) {
      std::ostringstream os;
      os << "run_q failed near t=" << q.t << ": " << e.what();
      throw NumericalFailure(os.str());
    }
  }
  return run;
}

}  // namespace oscenv
