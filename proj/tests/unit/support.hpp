#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "oscenv/grid.hpp"
#include "oscenv/model.hpp"

namespace oscenv::test {

inline EnvConfig row(int n) {
  switch (n) {
    case 1: return EnvConfig::make(0.01, 0.01, 2.0, 0.5);
    case 2: return EnvConfig::make(1.0, 0.01, 2.0, 0.5);
    default: return EnvConfig::make(1.0, 0.5, 2.0, 0.5);
  }
}

/// Small symmetric grid used by most solver tests.
inline Grid2D small_grid(int M = 41, int L = 41, double h1 = 2.0, double h2 = 2.0) {
  return Grid2D::make(-h1, h1, -h2, h2, M, L);
}

/// Random interior values with a zero boundary ring.
inline Field2D random_field(const Grid2D& g, std::uint64_t seed, double t = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Field2D f(g, t);
  for (int k = 1; k < g.L - 1; ++k)
    for (int j = 1; j < g.M - 1; ++j) f.at(j, k) = dist(rng);
  return f;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oscenv::test
