#pragma once

#include <array>
#include <vector>

namespace oscenv {

/// Coefficients A0..A4 of sum A_n y^n.
struct QuarticCoeffs {
  std::array<double, 5> A{};

  [[nodiscard]] double max_abs() const;
  [[nodiscard]] double eval(double y) const;
};

struct QuarticRoots {
  std::vector<double> real_roots;  ///< ascending
  int complex_pairs = 0;
  int degree = 0;  ///< effective degree after dropping negligible leading terms
};

/// Relative size below which a leading coefficient is treated as zero.
inline constexpr double kDegreeDropThreshold = 1e-14;
/// A root counts as real when |Im z| <= kImagTolerance * max(1, |z|).
inline constexpr double kImagTolerance = 1e-9;

/// Real roots of a polynomial of degree <= 4: Ferrari's method for quartics,
/// Cardano for cubics, the quadratic formula and linear solve below, each
/// followed by Newton polishing on the full polynomial. Throws
/// InvalidArgument if every coefficient is zero or any is non-finite.
[[nodiscard]] QuarticRoots solve_quartic(const QuarticCoeffs& c);

}  // namespace oscenv
