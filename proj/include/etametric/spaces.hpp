#pragma once

#include <algorithm>
#include <concepts>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cone.hpp"
#include "errors.hpp"
#include "sampling.hpp"
#include "vec.hpp"

namespace etametric {

namespace detail {

/// Shortest decimal string that parses back to exactly x.
inline std::string shortest_double(double x) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  return buf;
}

}  // namespace detail

/// Square table of point labels with symmetric storage left to the caller;
/// the scalar companion of a vector-valued distance table.
struct RealTable {
  std::vector<std::string> labels;
  std::vector<double> values;  // row-major size() * size()

  std::size_t size() const { return labels.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * size() + j]; }

  static RealTable zeros(std::vector<std::string> labels) {
    RealTable t;
    const std::size_t n = labels.size();
    t.labels = std::move(labels);
    t.values.assign(n * n, 0.0);
    return t;
  }
};

/// A finite point set with tabulated vector distances and scale values.
/// Tables are stored in full so tests can exercise symmetry violations; the
/// constructor validates structure (dimensions, finiteness, scale >= 1) but
/// deliberately not the metric axioms, which are what check_axioms reports.
class FiniteSpace {
 public:
  using point_type = std::size_t;
  static constexpr bool finite_domain = true;

  FiniteSpace(std::vector<std::string> labels, ConeSpace cone,
              std::vector<Vec> distance_table, std::vector<double> eta_table)
      : labels_(std::move(labels)),
        cone_(std::move(cone)),
        d_(std::move(distance_table)),
        eta_(std::move(eta_table)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw contract_error("a finite space needs at least one point");
    for (const std::string& l : labels_) {
      if (l.empty() || l.find_first_of(" \t\r\n") != std::string::npos)
        throw contract_error("point labels must be nonempty and free of whitespace");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (labels_[i] == labels_[j])
          throw contract_error("duplicate point label '" + labels_[i] + "'");
    if (d_.size() != n * n) throw contract_error("distance table must be n-by-n");
    if (eta_.size() != n * n) throw contract_error("scale table must be n-by-n");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Vec& v = d_[i * n + j];
        if (v.dim() != cone_.dim())
          throw contract_error("distance(" + labels_[i] + "," + labels_[j] +
                               ") does not match the ordering space dimension");
        if (!v.is_finite())
          throw data_error("distance(" + labels_[i] + "," + labels_[j] +
                           ") is not finite");
        const double e = eta_[i * n + j];
        if (!(e >= 1.0))
          throw data_error("eta(" + labels_[i] + "," + labels_[j] +
                           ") = " + detail::shortest_double(e) + " is below 1");
      }
    }
  }

  /// Builds the full tables by evaluating the given callables on all pairs.
  static FiniteSpace from_tables(std::vector<std::string> labels, ConeSpace cone,
                                 const std::function<Vec(std::size_t, std::size_t)>& d,
                                 const std::function<double(std::size_t, std::size_t)>& eta) {
    const std::size_t n = labels.size();
    std::vector<Vec> dv(n * n);
    std::vector<double> ev(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        dv[i * n + j] = d(i, j);
        ev[i * n + j] = eta(i, j);
      }
    }
    return FiniteSpace(std::move(labels), std::move(cone), std::move(dv), std::move(ev));
  }

  std::size_t size() const { return labels_.size(); }
  const ConeSpace& cone() const { return cone_; }

  const Vec& distance(std::size_t i, std::size_t j) const {
    check_index(i);
    check_index(j);
    return d_[i * size() + j];
  }

  double eta(std::size_t i, std::size_t j) const {
    check_index(i);
    check_index(j);
    return eta_[i * size() + j];
  }

  /// Real-valued companion metric: the norm of the vector distance.
  double derived(std::size_t i, std::size_t j) const { return cone_.norm(distance(i, j)); }

  std::string label(std::size_t i) const {
    check_index(i);
    return labels_[i];
  }

  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<std::size_t> index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  bool in_domain(std::size_t i) const { return i < size(); }

  /// All points; finite spaces are enumerated exhaustively, so the plan is
  /// accepted only for interface uniformity.
  std::vector<std::size_t> sample_points(const SamplingPlan& = {}) const {
    std::vector<std::size_t> pts(size());
    std::iota(pts.begin(), pts.end(), std::size_t{0});
    return pts;
  }

  RealTable derived_table() const {
    RealTable t = RealTable::zeros(labels_);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) t.at(i, j) = derived(i, j);
    return t;
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= size())
      throw contract_error("point index " + std::to_string(i) +
                           " is out of range for a space of " +
                           std::to_string(size()) + " points");
  }

  std::vector<std::string> labels_;
  ConeSpace cone_;
  std::vector<Vec> d_;
  std::vector<double> eta_;
};

/// Points of a closed bounded interval with evaluator-backed distance and
/// scale maps. Accessors validate every evaluation: distances must be finite
/// vectors of the right dimension, scale values must be finite and >= 1.
class IntervalSpace {
 public:
  using point_type = double;
  static constexpr bool finite_domain = false;

  using DistFn = std::function<Vec(double, double)>;
  using EtaFn = std::function<double(double, double)>;

  IntervalSpace(double lo, double hi, ConeSpace cone, DistFn d, EtaFn eta)
      : lo_(lo), hi_(hi), cone_(std::move(cone)), d_(std::move(d)), eta_(std::move(eta)) {
    if (!std::isfinite(lo_) || !std::isfinite(hi_) || !(lo_ < hi_))
      throw contract_error("interval bounds must be finite with lo < hi");
    if (!d_ || !eta_) throw contract_error("interval space needs distance and scale evaluators");
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const ConeSpace& cone() const { return cone_; }

  Vec distance(double x, double y) const {
    Vec v = d_(x, y);
    if (v.dim() != cone_.dim())
      throw contract_error("distance(" + label(x) + "," + label(y) +
                           ") does not match the ordering space dimension");
    if (!v.is_finite())
      throw data_error("distance(" + label(x) + "," + label(y) + ") is not finite");
    return v;
  }

  double eta(double x, double y) const {
    const double e = eta_(x, y);
    if (!(e >= 1.0) || !std::isfinite(e))
      throw data_error("eta(" + label(x) + "," + label(y) + ") = " +
                       detail::shortest_double(e) + " is below 1 or not finite");
    return e;
  }

  double derived(double x, double y) const { return cone_.norm(distance(x, y)); }

  std::string label(double x) const { return detail::shortest_double(x); }

  bool in_domain(double x) const {
    if (!std::isfinite(x)) return false;
    const double slack = 1e-12 * (1.0 + std::abs(lo_) + std::abs(hi_));
    return x >= lo_ - slack && x <= hi_ + slack;
  }

  std::vector<double> sample_points(const SamplingPlan& plan = {}) const {
    return sample_interval(lo_, hi_, plan);
  }

 private:
  double lo_, hi_;
  ConeSpace cone_;
  DistFn d_;
  EtaFn eta_;
};

/// What the generic algorithms require of a space: a cone-ordered value
/// space, vector distances, scale values, the derived real metric, labels
/// for reporting, a domain predicate, and a deterministic point sample.
template <class S>
concept EtaSpace = requires(const S& s, const typename S::point_type& p,
                            const SamplingPlan& plan) {
  { s.cone() } -> std::convertible_to<const ConeSpace&>;
  { s.distance(p, p) } -> std::convertible_to<Vec>;
  { s.eta(p, p) } -> std::convertible_to<double>;
  { s.derived(p, p) } -> std::convertible_to<double>;
  { s.label(p) } -> std::convertible_to<std::string>;
  { s.in_domain(p) } -> std::convertible_to<bool>;
  { s.sample_points(plan) } -> std::convertible_to<std::vector<typename S::point_type>>;
};

static_assert(EtaSpace<FiniteSpace>);
static_assert(EtaSpace<IntervalSpace>);

}  // namespace etametric
