#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oscenv/grid.hpp"
#include "oscenv/model.hpp"
#include "oscenv/quartic.hpp"

namespace oscenv {

class WorkerPool;

/// Antisymmetric metric g = [[eps_r, y], [-y, eps_i]].
struct MetricPoint {
  double g11 = 0.0;
  double g22 = 0.0;
  double g12 = 0.0;
  double g21 = 0.0;

  static MetricPoint make(const EnvConfig& cfg, double y);
  [[nodiscard]] double det() const { return g11 * g22 - g12 * g21; }
};

/// Coefficients of the quartic for the off-diagonal metric element y at
/// (u1, u2, t), with a = eps_r eps_i and B = u1^2 - u2^2 + Omega0^2(t):
///   A0 = a (4 a u1 - 4 eps_r u1^2 u2^2 - eps_i B^2)
///   A1 = -2 a u2 (eps_r + eps_i)
///   A2 = 24 a u1 + 8 eps_r u1^2 u2^2 + 2 eps_i B^2
///   A3 = -8 u2 (eps_r + eps_i)
///   A4 = 32 u1
[[nodiscard]] QuarticCoeffs quartic_coeffs(double u1, double u2, double t, const EnvConfig& cfg);

/// True when the quartic at this point has at least one real root. A point
/// where every coefficient vanishes counts as retained.
[[nodiscard]] bool has_real_root(const QuarticCoeffs& c);

/// Retained/excised labelling of a grid and its connectivity.
struct RegionMap {
  Grid2D grid;
  double t = 0.0;
  std::vector<std::uint8_t> retained;  ///< 1 = has a real root
  int n_total = 0;
  int n_upper = 0;  ///< components within rows u2 > 0
  int n_lower = 0;  ///< components within rows u2 < 0
  std::size_t excised_count = 0;

  [[nodiscard]] bool is_retained(int j, int k) const { return retained[grid.index(j, k)] != 0; }
  /// Header line, then one row of R/X characters per u2 index.
  [[nodiscard]] std::string to_text() const;
};

/// 4-neighbour connected components of mask != 0 restricted to rows
/// [k_begin, k_end).
[[nodiscard]] int count_components(int M, int L, std::span<const std::uint8_t> mask,
                                   int k_begin, int k_end);

/// Solves the quartic at every node and counts components of the retained set.
[[nodiscard]] RegionMap classify_manifold(const Grid2D& grid, double t, const EnvConfig& cfg,
                                          const WorkerPool* pool = nullptr);

/// Recounts components after `retained` has been filled in.
void recount(RegionMap& map);

struct AngleResult {
  double psi_plus = 0.0;
  double psi_minus = 0.0;
  double delta = 0.0;
  double lambda_scale = 1.0;
  double dtheta = 0.0;
};

enum class AngleBranch { Both, Plus, Minus };

/// psi_pm = arccos[sqrt(1 + (y/lambda)^2) cos(dtheta +- delta)] with
/// cos delta = lambda / sqrt(lambda^2 + y^2), sin delta = y / sqrt(lambda^2 + y^2).
/// Throws InvalidArgument if lambda <= 0 or a requested branch has an
/// arccos argument outside [-1, 1]; an unrequested branch is left as NaN.
[[nodiscard]] AngleResult angles(double dtheta, double y, double lambda_scale = 1.0,
                                 AngleBranch branch = AngleBranch::Both);

}  // namespace oscenv
