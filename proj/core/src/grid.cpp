#include "oscenv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oscenv/errors.hpp"
#include "oscenv/parallel.hpp"

namespace oscenv {

Grid2D Grid2D::make(double u1_min, double u1_max, double u2_min, double u2_max,
                    int M, int L) {
  Grid2D g{u1_min, u1_max, u2_min, u2_max, M, L};
  g.validate();
  return g;
}

Grid2D Grid2D::fine() { return make(-6.0, 6.0, -8.0, 8.0, 601, 801); }

Grid2D Grid2D::desk() { return make(-6.0, 6.0, -8.0, 8.0, 241, 321); }

void Grid2D::validate() const {
  std::ostringstream os;
  if (M < 3 || L < 3) {
    os << "Grid2D: node counts must be >= 3 (M=" << M << ", L=" << L << ")";
  } else if (!std::isfinite(u1_min) || !std::isfinite(u1_max) ||
             !std::isfinite(u2_min) || !std::isfinite(u2_max)) {
    os << "Grid2D: bounds must be finite";
  } else if (!(u1_max > u1_min) || !(u2_max > u2_min)) {
    os << "Grid2D: empty extent u1=[" << u1_min << "," << u1_max << "] u2=["
       << u2_min << "," << u2_max << "]";
  } else {
    return;
  }
  throw InvalidArgument(os.str());
}

double Grid2D::u1(int j) const {
  const double mid = 0.5 * (u1_min + u1_max);
  return mid + (j - 0.5 * (M - 1)) * du1();
}

double Grid2D::u2(int k) const {
  const double mid = 0.5 * (u2_min + u2_max);
  return mid + (k - 0.5 * (L - 1)) * du2();
}

std::pair<int, int> Grid2D::nearest_node(double x, double y) const {
  const int j = static_cast<int>(std::lround((x - u1_min) / du1()));
  const int k = static_cast<int>(std::lround((y - u2_min) / du2()));
  return {std::clamp(j, 0, M - 1), std::clamp(k, 0, L - 1)};
}

std::optional<std::pair<int, int>> Grid2D::node_at(double x, double y) const {
  const auto [j, k] = nearest_node(x, y);
  if (std::abs(u1(j) - x) <= 0.5 * du1() && std::abs(u2(k) - y) <= 0.5 * du2()) {
    return std::pair{j, k};
  }
  return std::nullopt;
}

double trapezoid(const Grid2D& grid, std::span<const double> values,
                 const WorkerPool* pool) {
  if (values.size() != grid.size()) {
    throw InvalidArgument("trapezoid: value count does not match grid");
  }
  const int M = grid.M;
  const int L = grid.L;
  std::vector<double> rows(static_cast<std::size_t>(L));
  for_each_chunk(pool, static_cast<std::size_t>(L), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const double* row = values.data() + k * static_cast<std::size_t>(M);
      double s = 0.5 * row[0];
      for (int j = 1; j < M - 1; ++j) s += row[j];
      s += 0.5 * row[M - 1];
      rows[k] = s;
    }
  });
  double total = 0.5 * rows[0];
  for (int k = 1; k < L - 1; ++k) total += rows[static_cast<std::size_t>(k)];
  total += 0.5 * rows[static_cast<std::size_t>(L - 1)];
  return total * grid.du1() * grid.du2();
}

double trapezoid(const Field2D& field, const WorkerPool* pool) {
  return trapezoid(field.grid, field.values, pool);
}

double l1_distance(const Field2D& a, const Field2D& b) {
  if (!(a.grid == b.grid)) throw InvalidArgument("l1_distance: grid mismatch");
  std::vector<double> diff(a.values.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = std::abs(a.values[i] - b.values[i]);
  return trapezoid(a.grid, diff);
}

double total_variation(const Field2D& a, const Field2D& b) {
  return 0.5 * l1_distance(a, b);
}

Field2D ComplexField::real() const {
  Field2D f(grid, t);
  f.values = qr;
  return f;
}

Field2D ComplexField::imag() const {
  Field2D f(grid, t);
  f.values = qi;
  return f;
}

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

Field2D reflect_u2(const Field2D& field) {
  const Grid2D& g = field.grid;
  if (!g.symmetric_in_u2()) throw InvalidArgument("reflect_u2: grid not symmetric in u2");
  Field2D out(g, field.t);
  for (int k = 0; k < g.L; ++k) {
    for (int j = 0; j < g.M; ++j) out.at(j, k) = field.at(j, g.L - 1 - k);
  }
  return out;
}

void zero_boundary(const Grid2D& g, std::span<double> v) {
  for (int j = 0; j < g.M; ++j) {
    v[g.index(j, 0)] = 0.0;
    v[g.index(j, g.L - 1)] = 0.0;
  }
  for (int k = 0; k < g.L; ++k) {
    v[g.index(0, k)] = 0.0;
    v[g.index(g.M - 1, k)] = 0.0;
  }
}

double max_abs_boundary(const Grid2D& g, std::span<const double> v) {
  double m = 0.0;
  for (int j = 0; j < g.M; ++j) {
    m = std::max({m, std::abs(v[g.index(j, 0)]), std::abs(v[g.index(j, g.L - 1)])});
  }
  for (int k = 0; k < g.L; ++k) {
    m = std::max({m, std::abs(v[g.index(0, k)]), std::abs(v[g.index(g.M - 1, k)])});
  }
  return m;
}

}  // namespace oscenv
