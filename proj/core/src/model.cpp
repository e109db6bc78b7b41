#include "oscenv/model.hpp"

#include <cmath>
#include <sstream>

#include "oscenv/errors.hpp"

namespace oscenv {

void EnvConfig::validate() const {
  auto fail = [](const char* field, double value, const char* rule) {
    std::ostringstream os;
    os << "EnvConfig." << field << " = " << value << " violates " << rule;
    throw InvalidArgument(os.str());
  };
  if (!(eps_r >= 0.0) || !std::isfinite(eps_r)) fail("eps_r", eps_r, ">= 0");
  if (!(eps_i >= 0.0) || !std::isfinite(eps_i)) fail("eps_i", eps_i, ">= 0");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) fail("gamma", gamma, "> 0");
  if (!(nu > 0.0) || !std::isfinite(nu)) fail("nu", nu, "> 0");
  if (!std::isfinite(t0)) fail("t0", t0, "finite");
  if (omega_const && (!(*omega_const > 0.0) || !std::isfinite(*omega_const))) {
    fail("omega_const", *omega_const, "> 0");
  }
}

EnvConfig EnvConfig::make(double eps_r, double eps_i, double gamma, double nu,
                          double t0) {
  EnvConfig cfg;
  cfg.eps_r = eps_r;
  cfg.eps_i = eps_i;
  cfg.gamma = gamma;
  cfg.nu = nu;
  cfg.t0 = t0;
  cfg.validate();
  return cfg;
}

double EnvConfig::omega_min() const {
  return omega_const ? *omega_const : 2.0;
}

double EnvConfig::omega_max() const {
  return omega_const ? *omega_const : 2.0 + 2.0 / gamma;
}

double omega0(double t, const EnvConfig& cfg) {
  if (cfg.omega_const) return *cfg.omega_const;
  return 2.0 + (1.0 + std::tanh(cfg.nu * t)) / cfg.gamma;
}

DriftCoeffs drift(double u1, double u2, double t, const EnvConfig& cfg) {
  const double w = omega0(t, cfg);
  return {u1 * u1 - u2 * u2 + w * w, 2.0 * u1 * u2, 4.0 * u1};
}

namespace {

struct OscState {
  complex x;
  complex v;
};

OscState rk4_step(const OscState& s, double t, double h, const EnvConfig& cfg) {
  auto accel = [&](double tt, complex x) {
    const double w = omega0(tt, cfg);
    return -w * w * x;
  };
  const complex k1x = s.v;
  const complex k1v = accel(t, s.x);
  const complex k2x = s.v + 0.5 * h * k1v;
  const complex k2v = accel(t + 0.5 * h, s.x + 0.5 * h * k1x);
  const complex k3x = s.v + 0.5 * h * k2v;
  const complex k3v = accel(t + 0.5 * h, s.x + 0.5 * h * k2x);
  const complex k4x = s.v + h * k3v;
  const complex k4v = accel(t + h, s.x + h * k3x);
  return {s.x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
          s.v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

}  // namespace

Trajectory1D solve_regular_oscillator(const EnvConfig& cfg, complex x_init,
                                      complex v_init, double dt,
                                      double t_end) {
  cfg.validate();
  if (!(dt > 0.0)) throw InvalidArgument("solve_regular_oscillator: dt must be > 0");
  if (!(t_end > cfg.t0)) {
    throw InvalidArgument("solve_regular_oscillator: t_end must exceed t0");
  }
  if (dt * cfg.omega_max() > kOscillatorStepGuard) {
    std::ostringstream os;
    os << "solve_regular_oscillator: dt*max(Omega0) = " << dt * cfg.omega_max()
       << " exceeds " << kOscillatorStepGuard << " (use dt <= "
       << kOscillatorStepGuard / cfg.omega_max() << ")";
    throw StabilityViolation(os.str());
  }

  const double span = t_end - cfg.t0;
  const auto full_steps = static_cast<std::size_t>(std::floor(span / dt + 1e-9));
  const double tail = span - static_cast<double>(full_steps) * dt;
  const bool has_tail = tail > 1e-12 * dt;

  Trajectory1D out;
  const std::size_t n = full_steps + (has_tail ? 1 : 0) + 1;
  out.times.reserve(n);
  out.values.reserve(n);
  out.derivatives.reserve(n);

  OscState s{x_init, v_init};
  out.times.push_back(cfg.t0);
  out.values.push_back(s.x);
  out.derivatives.push_back(s.v);
  for (std::size_t i = 0; i < full_steps; ++i) {
    const double t = cfg.t0 + static_cast<double>(i) * dt;
    s = rk4_step(s, t, dt, cfg);
    out.times.push_back(cfg.t0 + static_cast<double>(i + 1) * dt);
    out.values.push_back(s.x);
    out.derivatives.push_back(s.v);
  }
  if (has_tail) {
    s = rk4_step(s, out.times.back(), t_end - out.times.back(), cfg);
    out.times.push_back(t_end);
    out.values.push_back(s.x);
    out.derivatives.push_back(s.v);
  }
  return out;
}

}  // namespace oscenv
