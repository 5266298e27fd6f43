#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "spaces.hpp"

namespace etametric {

/// Finite prefix of a sequence in one space, plus where it came from
/// (an orbit, a fixture, a user file).
template <typename P>
struct SequencePrefix {
  std::vector<P> points;
  std::string source;
};

enum class Verdict { converging, stalled, diverging, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::converging: return "converging";
    case Verdict::stalled: return "stalled";
    case Verdict::diverging: return "diverging";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

/// Verdict over a finite trail of distances. A finite prefix can only
/// sample the definition's "for every c >> theta", so the result is a
/// graded judgement against an explicit threshold schedule, never a proof.
struct ConvergenceVerdict {
  Verdict status = Verdict::inconclusive;
  /// Trail index from which every later value stays below the deepest
  /// threshold met; 0 when no threshold was met.
  std::size_t witness = 0;
  /// (n, value) per observed position; n is the position in the sequence
  /// for limit trails and the window's right edge for Cauchy trails.
  std::vector<std::pair<std::size_t, double>> trail;
  std::size_t thresholds_met = 0;
};

/// Geometric schedule 2^-1 .. 2^-20.
inline std::vector<double> default_threshold_schedule() {
  std::vector<double> s;
  s.reserve(20);
  double t = 1.0;
  for (int k = 0; k < 20; ++k) {
    t *= 0.5;
    s.push_back(t);
  }
  return s;
}

inline constexpr std::size_t kDefaultCauchyWindow = 8;

inline void validate_schedule(const std::vector<double>& schedule) {
  if (schedule.empty()) throw contract_error("threshold schedule must be nonempty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!std::isfinite(schedule[i]))
      throw contract_error("threshold schedule entries must be finite");
    if (i > 0 && schedule[i] >= schedule[i - 1])
      throw contract_error("threshold schedule must be strictly decreasing");
  }
  if (schedule.back() <= 0.0)
    throw contract_error("threshold schedule floor must be positive");
}

namespace detail {

/// Grade a distance trail against a schedule. A threshold t counts as met
/// when some suffix of the trail stays strictly below t. All thresholds
/// met: converging. None met with the tail pinned at or above the widest
/// threshold: diverging. Partially met with a flat tail (relative spread
/// within 10%): stalled. Anything else: inconclusive.
inline ConvergenceVerdict assess_trail(std::vector<std::pair<std::size_t, double>> trail,
                                       const std::vector<double>& schedule) {
  validate_schedule(schedule);
  if (trail.empty()) throw contract_error("distance trail must be nonempty");
  const std::size_t n = trail.size();

  std::vector<double> suffix_max(n);
  double running = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    running = std::max(running, trail[i].second);
    suffix_max[i] = running;
  }

  ConvergenceVerdict verdict;
  verdict.trail = std::move(trail);
  for (double t : schedule) {
    // suffix_max is non-increasing, so the minimum is at the end.
    if (suffix_max[n - 1] < t) {
      ++verdict.thresholds_met;
      std::size_t w = n - 1;
      while (w > 0 && suffix_max[w - 1] < t) --w;
      verdict.witness = w;
    } else {
      break;
    }
  }

  const std::size_t tail_len = std::min(n, std::max<std::size_t>(2, n / 4));
  double tail_min = verdict.trail[n - tail_len].second;
  double tail_max = tail_min;
  for (std::size_t i = n - tail_len; i < n; ++i) {
    tail_min = std::min(tail_min, verdict.trail[i].second);
    tail_max = std::max(tail_max, verdict.trail[i].second);
  }

  if (verdict.thresholds_met == schedule.size()) {
    verdict.status = Verdict::converging;
  } else if (verdict.thresholds_met == 0 && tail_min >= schedule.front()) {
    verdict.status = Verdict::diverging;
  } else if (verdict.thresholds_met > 0 && tail_max > 0.0 &&
             (tail_max - tail_min) <= 0.1 * tail_max) {
    verdict.status = Verdict::stalled;
  } else {
    verdict.status = Verdict::inconclusive;
  }
  return verdict;
}

template <EtaSpace S>
void require_in_domain(const S& space, const typename S::point_type& p,
                       const char* what) {
  if (!space.in_domain(p))
    throw contract_error(std::string(what) + " " + space.label(p) +
                         " lies outside the space");
}

}  // namespace detail

/// Membership in the open ball B(center, c) = { p : d(center, p) << c },
/// with << decided at the given interiority margin.
template <EtaSpace S>
bool ball_contains(const S& space, const typename S::point_type& center,
                   const Vec& c, double margin, const typename S::point_type& p) {
  if (!space.cone().strictly_interior(c, margin))
    throw contract_error("ball radius vector must be strictly interior to the cone");
  detail::require_in_domain(space, center, "ball center");
  detail::require_in_domain(space, p, "ball candidate");
  return space.cone().strictly_interior(c - space.distance(center, p), margin);
}

/// The countable local base c0, c0/2, ..., c0/depth at p.
template <EtaSpace S>
std::vector<Vec> local_base(const S& space, const typename S::point_type& p,
                            const Vec& c0, std::size_t depth,
                            double margin = kTinyMargin) {
  if (depth < 1) throw contract_error("local base depth must be at least 1");
  if (!space.cone().strictly_interior(c0, margin))
    throw contract_error("local base seed must be strictly interior to the cone");
  detail::require_in_domain(space, p, "local base point");
  std::vector<Vec> base;
  base.reserve(depth);
  for (std::size_t k = 1; k <= depth; ++k) base.push_back((1.0 / double(k)) * c0);
  return base;
}

/// Grades the trail D(x_n, limit) against the schedule.
template <EtaSpace S>
ConvergenceVerdict is_convergent(const S& space, const SequencePrefix<typename S::point_type>& seq,
                                 const typename S::point_type& limit,
                                 const std::vector<double>& schedule = default_threshold_schedule()) {
  if (seq.points.size() < 2)
    throw contract_error("sequence prefix must contain at least two points");
  detail::require_in_domain(space, limit, "limit candidate");
  std::vector<std::pair<std::size_t, double>> trail;
  trail.reserve(seq.points.size());
  for (std::size_t n = 0; n < seq.points.size(); ++n) {
    detail::require_in_domain(space, seq.points[n], "sequence point");
    trail.emplace_back(n, space.derived(seq.points[n], limit));
  }
  return detail::assess_trail(std::move(trail), schedule);
}

/// Grades the trail of windowed pairwise sups sup{ D(x_i, x_j) : i, j in
/// the trailing window ending at n } against the schedule. Trail index n
/// is the window's right edge.
template <EtaSpace S>
ConvergenceVerdict is_cauchy_prefix(const S& space, const SequencePrefix<typename S::point_type>& seq,
                                    const std::vector<double>& schedule = default_threshold_schedule(),
                                    std::size_t window = kDefaultCauchyWindow) {
  if (window < 2) throw contract_error("Cauchy window must be at least 2");
  if (seq.points.size() < window)
    throw contract_error("sequence prefix must be at least one window long");
  for (const auto& p : seq.points) detail::require_in_domain(space, p, "sequence point");
  std::vector<std::pair<std::size_t, double>> trail;
  trail.reserve(seq.points.size() - window + 1);
  for (std::size_t n = window - 1; n < seq.points.size(); ++n) {
    double sup = 0.0;
    for (std::size_t i = n + 1 - window; i < n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j)
        sup = std::max(sup, space.derived(seq.points[i], seq.points[j]));
    trail.emplace_back(n, sup);
  }
  return detail::assess_trail(std::move(trail), schedule);
}

/// True iff every ball B(x, c0/k), k = 1..depth, meets a_set. With depth
/// past the distance resolution this reduces to "x lies in a_set or at
/// derived distance zero from it". Finite spaces only: arbitrary subsets
/// of interval domains are not finitely representable.
inline bool closure_contains(const FiniteSpace& space, const std::vector<std::size_t>& a_set,
                             std::size_t x, const Vec& c0, std::size_t depth,
                             double margin = kTinyMargin) {
  if (a_set.empty()) throw contract_error("closure test needs a nonempty point set");
  if (depth < 1) throw contract_error("closure depth must be at least 1");
  detail::require_in_domain(space, x, "closure point");
  for (std::size_t a : a_set) detail::require_in_domain(space, a, "set member");
  for (std::size_t k = 1; k <= depth; ++k) {
    const Vec c = (1.0 / double(k)) * c0;
    bool met = false;
    for (std::size_t a : a_set) {
      if (ball_contains(space, x, c, margin, a)) {
        met = true;
        break;
      }
    }
    if (!met) return false;
  }
  return true;
}

/// Outcome of probing whether D(., probe) respects a known convergence
/// x_n -> limit: the estimated limit of D(x_n, probe) against D(limit, probe).
struct DiscontinuityFinding {
  double probe_trail_limit = 0.0;  // estimated lim D(x_n, probe)
  double probe_at_limit = 0.0;     // D(limit, probe)
  double gap = 0.0;
  bool discontinuous = false;
  std::vector<std::pair<std::size_t, double>> probe_trail;
};

/// Requires is_convergent(seq, limit) to report converging first. The
/// trail-limit estimate is zero when the probe trail itself clears the
/// whole schedule (it demonstrably tends to zero at this resolution) and
/// the final trail value otherwise, which is exact for stabilized trails.
template <EtaSpace S>
DiscontinuityFinding detect_metric_discontinuity(
    const S& space, const SequencePrefix<typename S::point_type>& seq,
    const typename S::point_type& limit, const typename S::point_type& probe,
    const std::vector<double>& schedule = default_threshold_schedule(),
    double tol = 1e-6) {
  const ConvergenceVerdict to_limit = is_convergent(space, seq, limit, schedule);
  if (to_limit.status != Verdict::converging)
    throw contract_error("discontinuity probe requires a sequence that converges to the stated limit");
  detail::require_in_domain(space, probe, "probe point");

  std::vector<std::pair<std::size_t, double>> trail;
  trail.reserve(seq.points.size());
  for (std::size_t n = 0; n < seq.points.size(); ++n)
    trail.emplace_back(n, space.derived(seq.points[n], probe));
  const ConvergenceVerdict probe_verdict = detail::assess_trail(trail, schedule);

  DiscontinuityFinding finding;
  finding.probe_trail = std::move(trail);
  finding.probe_trail_limit = probe_verdict.status == Verdict::converging
                                  ? 0.0
                                  : finding.probe_trail.back().second;
  finding.probe_at_limit = space.derived(limit, probe);
  finding.gap = std::abs(finding.probe_trail_limit - finding.probe_at_limit);
  finding.discontinuous = finding.gap > tol;
  return finding;
}

}  // namespace etametric
