#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "oscenv/grid.hpp"

namespace oscenv {

class WorkerPool;

/// Treatment of negative density samples in A ln A.
enum class NegativePolicy {
  Reject,            ///< values below -tolerance throw DensityError; others count as 0
  ZeroContribution,  ///< every A <= 0 contributes 0
};

[[nodiscard]] std::string_view to_string(NegativePolicy policy);
[[nodiscard]] NegativePolicy negative_policy_from_string(std::string_view name);

struct EntropyOptions {
  NegativePolicy policy = NegativePolicy::Reject;
  double negative_tolerance = 1e-12;
  double normalization_tolerance = 1e-6;
  const WorkerPool* pool = nullptr;
};

/// -integral A ln A over the grid (trapezoid rule, 0 ln 0 = 0), no mass check.
/// Values below -opts.negative_tolerance throw DensityError under Reject and
/// contribute zero otherwise.
[[nodiscard]] double entropy_integral(const Grid2D& grid, std::span<const double> density,
                                      const EntropyOptions& opts = {});

/// Differential entropy of a unit-mass field. Throws DensityError if the mass
/// differs from 1 by more than opts.normalization_tolerance. Negative
/// undershoots of the solver contribute zero whatever the policy.
[[nodiscard]] double shannon(const Field2D& field, const EntropyOptions& opts = {});

/// Entropy integral of one component of a Q field already divided by the
/// shared beta; the component alone need not have unit mass. Negative values
/// contribute zero.
[[nodiscard]] double partial_entropy(const Field2D& component, const EntropyOptions& opts = {});

/// Entropy of (qr + qi) / beta for a raw (unnormalized) Q field. The sum must
/// have unit mass; its negative values are handled by opts.policy.
[[nodiscard]] double generalized_entropy(const ComplexField& field, double beta,
                                         const EntropyOptions& opts = {});

struct EntropySeries {
  std::vector<double> times;
  std::vector<std::optional<double>> s_plain;
  std::vector<std::optional<double>> s_partial_r;
  std::vector<std::optional<double>> s_partial_i;
  std::vector<std::optional<double>> s_gen;

  [[nodiscard]] std::size_t size() const { return times.size(); }
};

enum class EntropyKind { Plain, PartialR, PartialI, Generalized };

/// Builds the series from matched P snapshots (unit mass) and Q snapshots
/// (normalized by beta). Either list may be empty. An entry is left empty
/// when its integrand is undefined under the policy or, for partials, when
/// the component's mass is not positive.
[[nodiscard]] EntropySeries entropy_series(const std::vector<Field2D>& p_snapshots,
                                           const std::vector<ComplexField>& q_normalized,
                                           const EntropyOptions& opts = {});

/// S(t2) - S(t1) for the chosen series. Times must match entries to 1e-9.
/// Throws InvalidArgument for absent times or undefined entries.
[[nodiscard]] double entropy_production(const EntropySeries& series, double t1, double t2,
                                        EntropyKind kind = EntropyKind::Plain);

}  // namespace oscenv
