#include "oscenv/entropy.hpp"

#include <cmath>
#include <sstream>

#include "oscenv/errors.hpp"
#include "oscenv/parallel.hpp"

namespace oscenv {

std::string_view to_string(NegativePolicy policy) {
  return policy == NegativePolicy::Reject ? "reject" : "zero";
}

NegativePolicy negative_policy_from_string(std::string_view name) {
  if (name == "reject") return NegativePolicy::Reject;
  if (name == "zero") return NegativePolicy::ZeroContribution;
  throw InvalidArgument("unknown negative policy '" + std::string(name) +
                        "' (expected reject or zero)");
}

double entropy_integral(const Grid2D& grid, std::span<const double> a,
                        const EntropyOptions& opts) {
  if (a.size() != grid.size()) throw InvalidArgument("entropy: value count does not match grid");
  std::vector<double> integrand(a.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double v = a[i];
    if (!std::isfinite(v)) throw DensityError("entropy: non-finite density value");
    if (v > 0.0) {
      integrand[i] = -v * std::log(v);
    } else {
      integrand[i] = 0.0;
      worst = std::min(worst, v);
    }
  }
  if (opts.policy == NegativePolicy::Reject && worst < -opts.negative_tolerance) {
    std::ostringstream os;
    os << "entropy: density value " << worst << " below -" << opts.negative_tolerance;
    throw DensityError(os.str());
  }
  return trapezoid(grid, integrand, opts.pool);
}

namespace {

void require_unit_mass(const Field2D& field, const EntropyOptions& opts, const char* where) {
  const double mass = trapezoid(field, opts.pool);
  if (!(std::abs(mass - 1.0) <= opts.normalization_tolerance)) {
    std::ostringstream os;
    os << where << ": field mass " << mass << " is not 1";
    throw DensityError(os.str());
  }
}

EntropyOptions clipping(EntropyOptions opts) {
  opts.policy = NegativePolicy::ZeroContribution;
  return opts;
}

}  // namespace

double shannon(const Field2D& field, const EntropyOptions& opts) {
  require_unit_mass(field, opts, "shannon");
  return entropy_integral(field.grid, field.values, clipping(opts));
}

double partial_entropy(const Field2D& component, const EntropyOptions& opts) {
  return entropy_integral(component.grid, component.values, clipping(opts));
}

double generalized_entropy(const ComplexField& field, double beta, const EntropyOptions& opts) {
  if (!std::isfinite(beta) || beta == 0.0) throw DensityError("generalized_entropy: beta is zero");
  Field2D sum(field.grid, field.t);
  for (std::size_t i = 0; i < sum.values.size(); ++i) {
    sum.values[i] = (field.qr[i] + field.qi[i]) / beta;
  }
  require_unit_mass(sum, opts, "generalized_entropy");
  return entropy_integral(sum.grid, sum.values, opts);
}

EntropySeries entropy_series(const std::vector<Field2D>& p, const std::vector<ComplexField>& q,
                             const EntropyOptions& opts) {
  if (!p.empty() && !q.empty() && p.size() != q.size()) {
    throw InvalidArgument("entropy_series: P and Q snapshot counts differ");
  }
  EntropySeries s;
  const std::size_t n = std::max(p.size(), q.size());
  auto guarded = [](auto&& fn) -> std::optional<double> {
    try {
      return fn();
    } catch (const DensityError&) {
      return std::nullopt;
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double t = !p.empty() ? p[i].t : q[i].t;
    if (!p.empty() && !q.empty() && std::abs(p[i].t - q[i].t) > 1e-9) {
      throw InvalidArgument("entropy_series: P and Q snapshot times differ");
    }
    s.times.push_back(t);
    s.s_plain.push_back(p.empty() ? std::nullopt : guarded([&] { return shannon(p[i], opts); }));
    if (q.empty()) {
      s.s_partial_r.emplace_back();
      s.s_partial_i.emplace_back();
      s.s_gen.emplace_back();
      continue;
    }
    const Field2D re = q[i].real();
    const Field2D im = q[i].imag();
    auto partial = [&](const Field2D& c) -> std::optional<double> {
      if (!(trapezoid(c, opts.pool) > 0.0)) return std::nullopt;
      return guarded([&] { return partial_entropy(c, opts); });
    };
    s.s_partial_r.push_back(partial(re));
    s.s_partial_i.push_back(partial(im));
    s.s_gen.push_back(guarded([&] { return generalized_entropy(q[i], 1.0, opts); }));
  }
  return s;
}

namespace {

const std::vector<std::optional<double>>& pick(const EntropySeries& s, EntropyKind kind) {
  switch (kind) {
    case EntropyKind::Plain:
      return s.s_plain;
    case EntropyKind::PartialR:
      return s.s_partial_r;
    case EntropyKind::PartialI:
      return s.s_partial_i;
    case EntropyKind::Generalized:
      return s.s_gen;
  }
  return s.s_plain;
}

double value_at(const EntropySeries& s, double t, EntropyKind kind) {
  const auto& v = pick(s, kind);
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    if (std::abs(s.times[i] - t) <= 1e-9) {
      if (!v[i]) {
        std::ostringstream os;
        os << "entropy_production: entry at t=" << t << " is undefined";
        throw InvalidArgument(os.str());
      }
      return *v[i];
    }
  }
  std::ostringstream os;
  os << "entropy_production: time " << t << " not in series";
  throw InvalidArgument(os.str());
}

}  // namespace

double entropy_production(const EntropySeries& s, double t1, double t2, EntropyKind kind) {
  return value_at(s, t2, kind) - value_at(s, t1, kind);
}

}  // namespace oscenv
