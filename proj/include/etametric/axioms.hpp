#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "spaces.hpp"

namespace etametric {

/// One failed axiom check. `points` is (x, y, z) for triangle violations
/// with y the intermediate point; pair checks leave the middle entry empty.
/// `slack` is negative by the amount the required ordering failed:
///  - identity at a point: minus the norm of distance(p, p);
///  - identity across a pair: the membership slack of the distance when it
///    leaves the cone, or norm - tol when distinct points are indiscernible;
///  - symmetry: minus the norm of distance(x, y) - distance(y, x);
///  - triangle: the membership slack of rhs - lhs.
struct AxiomViolation {
  enum class Kind { identity, symmetry, triangle };
  Kind kind;
  std::array<std::string, 3> points;
  Vec lhs, rhs;
  double slack = 0.0;
};

inline const char* to_string(AxiomViolation::Kind k) {
  switch (k) {
    case AxiomViolation::Kind::identity: return "identity";
    case AxiomViolation::Kind::symmetry: return "symmetry";
    case AxiomViolation::Kind::triangle: return "triangle";
  }
  return "triangle";
}

/// Audit record of a single scaled-triangle comparison, kept on request so
/// callers can see how much tolerance each passing check actually consumed.
struct TripleCheck {
  std::array<std::string, 3> points;
  Vec lhs, rhs;
  double slack = 0.0;
  double tol_consumed = 0.0;  // max(0, -slack): zero when the check holds exactly
  bool passed = true;
};

struct CheckOptions {
  double tol = kDefaultTol;
  SamplingPlan plan{};
  bool collect_audit = false;
  /// Audit collection is honored only when the sampled point count stays at
  /// or below this bound; cubic audit trails on large spaces are refused.
  std::size_t audit_max_points = 32;
  std::size_t max_violations = 1024;
};

struct AxiomReport {
  bool d1_ok = true;  // identity: theta <= d(x,y), and d(x,y) = theta iff x = y
  bool d2_ok = true;  // symmetry: d(x,y) = d(y,x)
  bool d3_ok = true;  // scaled triangle: d(x,z) <= eta(x,z) (d(x,y) + d(y,z))
  std::vector<AxiomViolation> violations;
  bool violations_truncated = false;
  std::vector<TripleCheck> audit;
  std::size_t pairs_checked = 0;
  std::size_t triples_checked = 0;

  bool ok() const { return d1_ok && d2_ok && d3_ok; }
};

/// Verifies the three axioms over the space's point sample: exhaustively on
/// finite spaces, over the deterministic sampling plan otherwise. Pair
/// checks cover every ordered pair, the scaled triangle every ordered
/// triple. Violations are appended in scan order (lexicographic in the
/// sample indices), so reports are deterministic.
template <EtaSpace S>
AxiomReport check_axioms(const S& space, const CheckOptions& opt = {}) {
  if (opt.tol < 0.0) throw contract_error("tolerance must be nonnegative");
  const auto pts = space.sample_points(opt.plan);
  const std::size_t n = pts.size();
  const ConeSpace& cone = space.cone();

  AxiomReport report;
  auto add = [&](AxiomViolation v) {
    if (report.violations.size() < opt.max_violations)
      report.violations.push_back(std::move(v));
    else
      report.violations_truncated = true;
  };

  // Distances and scales are cached so the cubic scan touches evaluators
  // only a quadratic number of times; accessors validate as they go.
  std::vector<Vec> d(n * n);
  std::vector<double> eta(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i * n + j] = space.distance(pts[i], pts[j]);
      eta[i * n + j] = space.eta(pts[i], pts[j]);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      ++report.pairs_checked;
      const Vec& dij = d[i * n + j];
      if (i == j) {
        const double mag = cone.norm(dij);
        if (mag > opt.tol) {
          report.d1_ok = false;
          add({AxiomViolation::Kind::identity,
               {space.label(pts[i]), "", space.label(pts[j])},
               dij,
               Vec::zero(cone.dim()),
               -mag});
        }
        continue;
      }
      if (!cone.contains(dij, opt.tol)) {
        report.d1_ok = false;
        add({AxiomViolation::Kind::identity,
             {space.label(pts[i]), "", space.label(pts[j])},
             dij,
             Vec::zero(cone.dim()),
             cone.membership_slack(dij)});
      }
      if (i < j) {
        const double mag = cone.norm(dij);
        if (mag <= opt.tol) {
          report.d1_ok = false;
          add({AxiomViolation::Kind::identity,
               {space.label(pts[i]), "", space.label(pts[j])},
               dij,
               Vec::zero(cone.dim()),
               mag - opt.tol});
        }
        const double gap = cone.norm(dij - d[j * n + i]);
        if (gap > opt.tol) {
          report.d2_ok = false;
          add({AxiomViolation::Kind::symmetry,
               {space.label(pts[i]), "", space.label(pts[j])},
               dij,
               d[j * n + i],
               -gap});
        }
      }
    }
  }

  const bool audit = opt.collect_audit && n <= opt.audit_max_points;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        ++report.triples_checked;
        const Vec& lhs = d[x * n + z];
        const Vec rhs = eta[x * n + z] * (d[x * n + y] + d[y * n + z]);
        const bool passed = cone.contains(rhs - lhs, opt.tol);
        if (!passed) {
          report.d3_ok = false;
          add({AxiomViolation::Kind::triangle,
               {space.label(pts[x]), space.label(pts[y]), space.label(pts[z])},
               lhs,
               rhs,
               cone.membership_slack(rhs - lhs)});
        }
        if (audit) {
          const double slack = cone.membership_slack(rhs - lhs);
          report.audit.push_back(
              {{space.label(pts[x]), space.label(pts[y]), space.label(pts[z])},
               lhs,
               rhs,
               slack,
               slack < 0.0 ? -slack : 0.0,
               passed});
        }
      }
    }
  }
  return report;
}

/// Real-valued view of a space: D(x, y) = ||d(x, y)|| with the same scale
/// map. Inherits identity and symmetry from the base space exactly; the
/// scaled triangle holds with the extra normal-constant factor K.
template <EtaSpace S>
class DerivedEtaMetric {
 public:
  using point_type = typename S::point_type;

  explicit DerivedEtaMetric(S base) : base_(std::move(base)) {}

  const S& base() const { return base_; }

  double operator()(const point_type& x, const point_type& y) const {
    return base_.derived(x, y);
  }

  double eta(const point_type& x, const point_type& y) const { return base_.eta(x, y); }

 private:
  S base_;
};

/// Wraps the space in its derived real metric after verifying, on the same
/// point sample check_axioms uses, that D(x,z) <= K eta(x,z) (D(x,y) +
/// D(y,z)) + tol on every ordered triple. Callers are expected to have run
/// check_axioms already; a failure here means the inputs are unusable.
template <EtaSpace S>
DerivedEtaMetric<S> derive_eta_metric(const S& space, double tol = kDefaultTol,
                                      const SamplingPlan& plan = {}) {
  const auto pts = space.sample_points(plan);
  const std::size_t n = pts.size();
  const double k = space.cone().normal_constant();
  std::vector<double> dd(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dd[i * n + j] = space.derived(pts[i], pts[j]);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        const double lhs = dd[x * n + z];
        const double rhs = k * space.eta(pts[x], pts[z]) * (dd[x * n + y] + dd[y * n + z]);
        if (lhs > rhs + tol) {
          throw data_error("derived metric fails the scaled triangle at (" +
                           space.label(pts[x]) + "," + space.label(pts[y]) + "," +
                           space.label(pts[z]) + ")");
        }
      }
    }
  }
  return DerivedEtaMetric<S>(space);
}

}  // namespace etametric
