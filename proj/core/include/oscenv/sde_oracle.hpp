#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "oscenv/grid.hpp"
#include "oscenv/model.hpp"

namespace oscenv {

class WorkerPool;

struct PathState {
  double u1 = 0.0;
  double u2 = 0.0;
  double t = 0.0;
};

/// Euler-Maruyama step of
///   du1 = (u2^2 - u1^2 - Omega0^2) dt + sqrt(2 eps_r) dW1
///   du2 = -2 u1 u2 dt + sqrt(2 eps_i) dW2
/// with the drift evaluated at state.t and (n1, n2) standard normal draws.
[[nodiscard]] PathState em_step(const PathState& state, const EnvConfig& cfg, double dt,
                                double n1, double n2);

/// One-step transition density of em_step: independent Gaussians centred at
/// u_prev + A(u_prev) dt with variances 2 eps_r dt and 2 eps_i dt. Throws
/// InvalidArgument when either eps is zero or dt <= 0.
[[nodiscard]] double short_time_kernel(const PathState& u, const PathState& u_prev,
                                       const EnvConfig& cfg, double dt);

struct EnsembleRun {
  std::size_t n_paths = 100000;
  std::uint64_t seed = 1;
  double dt = 1e-3;
  std::vector<double> record_times;
  /// Histogram grid; paths leaving it are absorbed when absorb_outside_grid.
  Grid2D grid = Grid2D::desk();
  bool absorb_outside_grid = true;
  /// Paths with |u1| or |u2| above this are frozen and excluded.
  double cutoff = 1e3;
  double max_blowup_fraction = 0.2;
  bool densities = true;
  /// Test hook: all noise draws replaced by zero.
  bool zero_noise = false;
  /// Initial state; defaults to (0, Omega0(t0)).
  std::optional<std::pair<double, double>> start;
  /// Optional Gaussian spread (standard deviations) of the initial state.
  double start_sd_u1 = 0.0;
  double start_sd_u2 = 0.0;

  void validate() const;
};

struct FkEstimate {
  double t = 0.0;
  complex mean;  ///< E[exp(int (u1 + i u2) dt')] over surviving paths
  double re_stderr = 0.0;
  double im_stderr = 0.0;
  std::size_t n_effective = 0;
};

struct EnsembleResult {
  std::vector<Field2D> densities;  ///< unit-mass histograms, one per record time
  std::vector<FkEstimate> fk;
  std::size_t n_paths = 0;
  std::size_t blowup_count = 0;    ///< paths beyond the cutoff by the last record time
  std::size_t absorbed_count = 0;  ///< paths that left the grid
  bool valid = true;               ///< blowup fraction within the limit

  [[nodiscard]] double blowup_fraction() const {
    return n_paths ? static_cast<double>(blowup_count) / static_cast<double>(n_paths) : 0.0;
  }
};

/// Simulates independent paths with per-path Philox streams. Results are
/// identical for any worker count.
[[nodiscard]] EnsembleResult simulate_ensemble(const EnvConfig& cfg, const EnsembleRun& run,
                                               const WorkerPool* pool = nullptr);

}  // namespace oscenv
