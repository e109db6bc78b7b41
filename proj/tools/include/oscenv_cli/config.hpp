#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oscenv/entropy.hpp"
#include "oscenv/fp_solver.hpp"
#include "oscenv/grid.hpp"
#include "oscenv/model.hpp"
#include "oscenv/stability.hpp"

namespace oscenv::cli {

/// Everything a run needs. Defaults reproduce the first parameter row on the
/// 601 x 801 grid.
struct RunConfig {
  EnvConfig env;
  Grid2D grid = Grid2D::fine();

  std::optional<double> dt_p = 1e-5;  ///< nullopt: largest stable step times `safety`
  std::optional<double> dt_q = 2e-5;
  Integrator integrator = Integrator::SspRk3;
  double safety = 0.9;
  double series_interval = 0.1;
  std::vector<double> snapshots{1.5, 10.0, 20.0};

  GaussianInit init;
  bool center_at_phase_point = true;

  std::size_t paths = 100000;
  std::uint64_t seed = 1;
  double sde_dt = 1e-3;
  std::vector<double> sde_times{1.5, 10.0};
  double cutoff = 1e3;
  bool absorb = true;

  NegativePolicy negative_policy = NegativePolicy::Reject;
  std::vector<double> topology_times{-20.0, 0.0, 20.0};

  [[nodiscard]] nlohmann::json to_json() const;
  /// Missing keys keep their defaults; unknown keys and invalid values throw
  /// InvalidArgument naming the field.
  static RunConfig from_json(const nlohmann::json& j, RunConfig base);
  static RunConfig from_json(const nlohmann::json& j);

  void validate() const;

  [[nodiscard]] GaussianInit initial() const;
  [[nodiscard]] double resolved_dt_p() const;
  [[nodiscard]] double resolved_dt_q() const;
};

/// Rows of the parameter table: nu = 0.5, gamma = 2 and
///   1: eps_r = 0.01, eps_i = 0.01
///   2: eps_r = 1,    eps_i = 0.01
///   3: eps_r = 1,    eps_i = 0.5
[[nodiscard]] RunConfig preset(int row);
[[nodiscard]] RunConfig preset(const std::string& name);

/// Switches to the 241 x 321 grid with automatic steps.
void apply_desk(RunConfig& cfg);

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
[[nodiscard]] std::string fnv1a_hex(std::string_view bytes);

}  // namespace oscenv::cli
