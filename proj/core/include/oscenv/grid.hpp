#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace oscenv {

class WorkerPool;

/// Uniform node-centred grid on [u1_min, u1_max] x [u2_min, u2_max].
///
/// Node coordinates are computed symmetrically about the domain midpoint, so
/// on a domain symmetric in u2 the reflection u2 -> -u2 maps nodes onto nodes
/// with bit-exact negated coordinates.
struct Grid2D {
  double u1_min = -6.0;
  double u1_max = 6.0;
  double u2_min = -8.0;
  double u2_max = 8.0;
  int M = 601;  ///< nodes along u1
  int L = 801;  ///< nodes along u2

  /// Validating factory (M, L >= 3, max > min, finite bounds).
  static Grid2D make(double u1_min, double u1_max, double u2_min, double u2_max,
                     int M, int L);

  /// [-6,6] x [-8,8] at spacing 0.02: 600 x 800 cells.
  static Grid2D fine();
  /// Same extent at spacing 0.05, for runs that must finish in about a minute.
  static Grid2D desk();

  void validate() const;

  [[nodiscard]] double du1() const { return (u1_max - u1_min) / (M - 1); }
  [[nodiscard]] double du2() const { return (u2_max - u2_min) / (L - 1); }
  [[nodiscard]] double u1(int j) const;
  [[nodiscard]] double u2(int k) const;
  [[nodiscard]] std::size_t size() const {
    return static_cast<std::size_t>(M) * static_cast<std::size_t>(L);
  }
  /// Storage is u2-row-major: all u1 nodes of row k are contiguous.
  [[nodiscard]] std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(M) +
           static_cast<std::size_t>(j);
  }
  /// Index of the node within half a spacing of (u1, u2), if any.
  [[nodiscard]] std::optional<std::pair<int, int>> node_at(double u1,
                                                           double u2) const;
  /// Nearest node, clamped into the grid.
  [[nodiscard]] std::pair<int, int> nearest_node(double u1, double u2) const;
  [[nodiscard]] bool symmetric_in_u2() const { return u2_min == -u2_max; }
  [[nodiscard]] bool contains(double u1, double u2) const {
    return u1 >= u1_min && u1 <= u1_max && u2 >= u2_min && u2 <= u2_max;
  }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

/// A real scalar field sampled on a Grid2D at time t.
struct Field2D {
  Grid2D grid;
  std::vector<double> values;
  double t = 0.0;

  Field2D() = default;
  Field2D(const Grid2D& g, double time) : grid(g), values(g.size(), 0.0), t(time) {}

  [[nodiscard]] double& at(int j, int k) { return values[grid.index(j, k)]; }
  [[nodiscard]] double at(int j, int k) const { return values[grid.index(j, k)]; }
};

/// Paired real and imaginary fields evolved jointly.
struct ComplexField {
  Grid2D grid;
  std::vector<double> qr;
  std::vector<double> qi;
  double t = 0.0;

  ComplexField() = default;
  ComplexField(const Grid2D& g, double time)
      : grid(g), qr(g.size(), 0.0), qi(g.size(), 0.0), t(time) {}

  [[nodiscard]] Field2D real() const;
  [[nodiscard]] Field2D imag() const;
};

/// Trapezoidal double integral of samples laid out on `grid`. Each u2 row is
/// summed left to right, then the rows bottom to top, so the result does not
/// depend on the worker count.
[[nodiscard]] double trapezoid(const Grid2D& grid, std::span<const double> values,
                               const WorkerPool* pool = nullptr);
[[nodiscard]] double trapezoid(const Field2D& field, const WorkerPool* pool = nullptr);

/// Trapezoidal integral of |a - b|.
[[nodiscard]] double l1_distance(const Field2D& a, const Field2D& b);
/// Half the L1 distance.
[[nodiscard]] double total_variation(const Field2D& a, const Field2D& b);

[[nodiscard]] bool all_finite(std::span<const double> values);

/// Field reflected through u2 = 0 (requires a u2-symmetric grid).
[[nodiscard]] Field2D reflect_u2(const Field2D& field);

/// Sets the outer ring of nodes to zero.
void zero_boundary(const Grid2D& grid, std::span<double> values);
[[nodiscard]] double max_abs_boundary(const Grid2D& grid, std::span<const double> values);

}  // namespace oscenv
