#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace oscenv {

using complex = std::complex<double>;

/// Environment and frequency-model parameters.
///
/// The regular frequency follows Omega0(t) = 2 + (1/gamma) [1 + tanh(nu t)]
/// unless `omega_const` is set, in which case the frequency is held fixed
/// (used by tests and the noise-free oracle checks).
struct EnvConfig {
  double eps_r = 0.01;  ///< elastic-channel diffusion strength
  double eps_i = 0.01;  ///< inelastic-channel diffusion strength
  double gamma = 2.0;
  double nu = 0.5;
  double t0 = 0.0;  ///< environment switch-on time
  std::optional<double> omega_const;

  /// Throws InvalidArgument unless eps_r, eps_i >= 0, gamma, nu > 0 and
  /// omega_const (if set) is positive and finite.
  void validate() const;

  /// Validating factory.
  static EnvConfig make(double eps_r, double eps_i, double gamma, double nu,
                        double t0 = 0.0);

  /// Lower and upper bounds of Omega0 over all t.
  [[nodiscard]] double omega_min() const;
  [[nodiscard]] double omega_max() const;
};

/// Drift and source coefficients of the field-distribution operator.
struct DriftCoeffs {
  double k1 = 0.0;
  double k2 = 0.0;
  double k0 = 0.0;
};

[[nodiscard]] double omega0(double t, const EnvConfig& cfg);

/// k1 = u1^2 - u2^2 + Omega0^2(t), k2 = 2 u1 u2, k0 = 4 u1.
[[nodiscard]] DriftCoeffs drift(double u1, double u2, double t,
                                const EnvConfig& cfg);

/// Samples of the regular (noise-free) oscillator xi0(t).
struct Trajectory1D {
  std::vector<double> times;
  std::vector<complex> values;       ///< xi0(t_n)
  std::vector<complex> derivatives;  ///< d xi0 / dt at t_n

  [[nodiscard]] std::size_t size() const { return times.size(); }
};

/// Largest dt * max(Omega0) accepted by solve_regular_oscillator.
inline constexpr double kOscillatorStepGuard = 0.5;

/// Integrates xi'' + Omega0^2(t) xi = 0 from cfg.t0 to t_end with classic
/// fixed-step RK4. The last step is shortened so that t_end is sampled
/// exactly. Throws StabilityViolation when dt * max(Omega0) > 0.5.
[[nodiscard]] Trajectory1D solve_regular_oscillator(const EnvConfig& cfg,
                                                    complex x_init,
                                                    complex v_init, double dt,
                                                    double t_end);

}  // namespace oscenv
