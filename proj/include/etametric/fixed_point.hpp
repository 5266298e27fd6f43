#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spaces.hpp"

namespace etametric {

/// A self-map of one space. Every evaluation site checks that the image
/// stays in the domain and raises map_domain_error otherwise.
template <typename P>
struct SelfMap {
  std::function<P(const P&)> apply;
  std::string description;
};

enum class StopReason { step_below_tol, cycle_detected, max_iter };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::step_below_tol: return "step_below_tol";
    case StopReason::cycle_detected: return "cycle_detected";
    case StopReason::max_iter: return "max_iter";
  }
  return "max_iter";
}

/// Recorded Picard orbit x_0..x_N with step distances d_n = D(x_n, x_{n+1}).
/// Distance and eta evaluators are carried along (bound to a copy of the
/// space) so eta tails and partial sums can be computed on demand instead
/// of storing an N-by-N matrix.
template <typename P>
struct OrbitTrace {
  std::vector<P> iterates;
  std::vector<double> step_distances;
  StopReason stop = StopReason::max_iter;
  std::function<double(const P&, const P&)> derived;
  std::function<double(const P&, const P&)> eta;

  std::size_t steps() const { return step_distances.size(); }

  /// Max of eta over all ordered pairs (diagonal included) from the
  /// trailing window of iterates.
  double eta_tail_max(std::size_t window) const {
    if (iterates.empty()) throw contract_error("orbit has no iterates");
    if (window < 1) throw contract_error("eta tail window must be at least 1");
    const std::size_t w = std::min(window, iterates.size());
    const std::size_t start = iterates.size() - w;
    double best = 0.0;
    for (std::size_t i = start; i < iterates.size(); ++i)
      for (std::size_t j = start; j < iterates.size(); ++j)
        best = std::max(best, eta(iterates[i], iterates[j]));
    return best;
  }
};

/// Iterates x_{n+1} = T x_n until a step falls below stop_tol, a cycle is
/// detected, or max_iter steps are taken. On finite domains cycles are
/// exact revisits; on interval domains a near-return to a recent iterate
/// (period 2..4) with non-shrinking steps counts, so period-2 maps abort
/// instead of burning max_iter.
template <EtaSpace S>
OrbitTrace<typename S::point_type> picard_orbit(const S& space,
                                                const SelfMap<typename S::point_type>& map,
                                                const typename S::point_type& x0,
                                                std::size_t max_iter = 10000,
                                                double stop_tol = 1e-10) {
  using P = typename S::point_type;
  if (max_iter < 1) throw contract_error("max_iter must be at least 1");
  if (!space.in_domain(x0))
    throw contract_error("orbit start " + space.label(x0) + " lies outside the space");

  auto shared = std::make_shared<const S>(space);
  OrbitTrace<P> trace;
  trace.derived = [shared](const P& a, const P& b) { return shared->derived(a, b); };
  trace.eta = [shared](const P& a, const P& b) { return shared->eta(a, b); };
  trace.iterates.push_back(x0);

  std::vector<char> seen;
  if constexpr (S::finite_domain) {
    seen.assign(space.size(), 0);
    seen[x0] = 1;
  }

  for (std::size_t n = 0; n < max_iter; ++n) {
    const P cur = trace.iterates.back();
    P next = map.apply(cur);
    if (!space.in_domain(next))
      throw map_domain_error(map.description + " left the domain at iterate " +
                             std::to_string(n + 1) + ": " + space.label(next));
    const double d = space.derived(cur, next);
    trace.iterates.push_back(next);
    trace.step_distances.push_back(d);
    if (d < stop_tol) {
      trace.stop = StopReason::step_below_tol;
      break;
    }
    if constexpr (S::finite_domain) {
      if (seen[next]) {
        trace.stop = StopReason::cycle_detected;
        break;
      }
      seen[next] = 1;
    } else {
      bool revisits = false;
      for (std::size_t p = 2; p <= 4 && p + 1 <= trace.iterates.size(); ++p) {
        if (space.derived(next, trace.iterates[trace.iterates.size() - 1 - p]) < stop_tol) {
          revisits = true;
          break;
        }
      }
      if (revisits && trace.step_distances.size() >= 2 &&
          d >= trace.step_distances[trace.step_distances.size() - 2]) {
        trace.stop = StopReason::cycle_detected;
        break;
      }
    }
  }
  return trace;
}

/// Largest observed ratio D(Tx,Ty)/D(x,y): exact on finite domains
/// (all pairs), a sampled lower bound on the true Lipschitz constant
/// otherwise.
template <typename P>
struct ContractionEstimate {
  double k_hat = 0.0;
  P witness_a{};
  P witness_b{};
  std::size_t pairs_used = 0;
  bool exact = false;
};

template <EtaSpace S>
ContractionEstimate<typename S::point_type> estimate_contraction(
    const S& space, const SelfMap<typename S::point_type>& map,
    const SamplingPlan& plan = {}) {
  using P = typename S::point_type;
  const std::vector<P> pts = space.sample_points(plan);
  std::vector<P> image;
  image.reserve(pts.size());
  for (const P& p : pts) {
    P q = map.apply(p);
    if (!space.in_domain(q))
      throw map_domain_error(map.description + " left the domain at sample " +
                             space.label(p) + ": " + space.label(q));
    image.push_back(q);
  }
  ContractionEstimate<P> est;
  est.exact = S::finite_domain;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double denom = space.derived(pts[i], pts[j]);
      if (denom == 0.0) continue;
      const double ratio = space.derived(image[i], image[j]) / denom;
      if (est.pairs_used == 0 || ratio > est.k_hat) {
        est.k_hat = ratio;
        est.witness_a = pts[i];
        est.witness_b = pts[j];
      }
      ++est.pairs_used;
    }
  }
  if (est.pairs_used == 0)
    throw estimation_error("no sampled pair had positive distance; contraction factor is undefined");
  return est;
}

/// The asymptotic condition lim eta(x_n, x_m) < 1/k, sampled as the max
/// over a trailing window of iterates.
struct EtaConditionCheck {
  bool passed = false;
  double tail_max = 0.0;
  double bound = 0.0;  // 1/k, infinite when k = 0
  double margin = 0.0;
  std::size_t window_used = 0;
};

template <typename P>
EtaConditionCheck orbit_eta_condition(const OrbitTrace<P>& trace, double k,
                                      std::size_t tail_window = 16) {
  if (!(k >= 0.0 && k < 1.0))
    throw contract_error("contraction factor must lie in [0,1)");
  if (tail_window < 2) throw contract_error("eta tail window must be at least 2");
  EtaConditionCheck check;
  check.window_used = std::min(tail_window, trace.iterates.size());
  check.tail_max = trace.eta_tail_max(tail_window);
  check.bound = k > 0.0 ? 1.0 / k : std::numeric_limits<double>::infinity();
  check.margin = check.bound - check.tail_max;
  check.passed = check.tail_max < check.bound;
  return check;
}

/// S_n = sum_{j=1}^{n} k^j prod_{i=1}^{j} eta(x_i, x_m) for n = 1..m-1.
/// The products carry the witness m, so the series is per-m by
/// construction. Nondecreasing in n since k >= 0 and eta >= 1.
template <typename P>
std::vector<double> partial_sums(const OrbitTrace<P>& trace, double k,
                                 std::size_t m_witness) {
  if (!(k >= 0.0 && k < 1.0))
    throw contract_error("contraction factor must lie in [0,1)");
  if (m_witness < 1 || m_witness > trace.steps())
    throw contract_error("witness index must name a recorded iterate");
  const P& xm = trace.iterates[m_witness];
  std::vector<double> sums;
  sums.reserve(m_witness - 1);
  double term = 1.0;
  double total = 0.0;
  for (std::size_t j = 1; j < m_witness; ++j) {
    term *= k * trace.eta(trace.iterates[j], xm);
    total += term;
    sums.push_back(total);
  }
  return sums;
}

/// (S_{m-1} - S_{n-1}) * D(x_0, x_1) = sum_{j=n}^{m-1} k^j prod eta * d_0,
/// an upper bound on D(x_n, x_m) for 1 <= n < m on orbits whose
/// contraction and eta conditions hold.
template <typename P>
double a_posteriori_bound(const OrbitTrace<P>& trace, double k, std::size_t n,
                          std::size_t m) {
  if (n < 1 || n >= m) throw contract_error("a posteriori bound needs 1 <= n < m");
  const std::vector<double> sums = partial_sums(trace, k, m);
  const double s_m1 = sums[m - 2];
  const double s_n1 = n >= 2 ? sums[n - 2] : 0.0;  // S_0 = 0
  return (s_m1 - s_n1) * trace.step_distances[0];
}

struct BoundCheck {
  bool passed = true;
  std::size_t pairs_checked = 0;
  std::size_t first_violation = 0;  // n of the first failing pair, if any
  double worst_excess = 0.0;        // max D(x_n,x_m) - bound(n,m)
};

/// Verifies D(x_n, x_m) <= (S_{m-1} - S_{n-1}) * D(x_0, x_1) for all
/// 1 <= n < m against directly computed distances.
template <typename P>
BoundCheck check_a_posteriori(const OrbitTrace<P>& trace, double k, std::size_t m,
                              double tol = 1e-12) {
  if (m < 2 || m > trace.steps())
    throw contract_error("witness index must name a recorded iterate past x_1");
  const std::vector<double> sums = partial_sums(trace, k, m);
  const double d0 = trace.step_distances[0];
  BoundCheck check;
  for (std::size_t n = 1; n < m; ++n) {
    const double s_n1 = n >= 2 ? sums[n - 2] : 0.0;
    const double bound = (sums[m - 2] - s_n1) * d0;
    const double direct = trace.derived(trace.iterates[n], trace.iterates[m]);
    const double excess = direct - bound;
    ++check.pairs_checked;
    if (excess > tol) {
      if (check.passed) check.first_violation = n;
      check.passed = false;
      check.worst_excess = std::max(check.worst_excess, excess);
    }
  }
  return check;
}

enum class SolveStatus { converged, precondition_failed, max_iter, cycle_detected };
enum class CheckStatus { pass, fail, unverified };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::precondition_failed: return "precondition_failed";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::cycle_detected: return "cycle_detected";
  }
  return "max_iter";
}

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::unverified: return "unverified";
  }
  return "unverified";
}

struct Precheck {
  CheckStatus status = CheckStatus::unverified;
  double measured = 0.0;
  double bound = 0.0;
  std::string note;
};

template <typename P>
struct SolveReport {
  SolveStatus status = SolveStatus::max_iter;
  std::optional<P> fixed_point;
  double residual = std::numeric_limits<double>::quiet_NaN();
  std::size_t iterations = 0;
  std::vector<std::pair<std::string, Precheck>> preconditions;
  OrbitTrace<P> trace;

  const Precheck* precheck(const std::string& name) const {
    for (const auto& [n, c] : preconditions)
      if (n == name) return &c;
    return nullptr;
  }
  bool preconditions_ok() const {
    for (const auto& [n, c] : preconditions)
      if (c.status == CheckStatus::fail) return false;
    return true;
  }
};

struct SolveConfig {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  std::size_t tail_window = 16;
  SamplingPlan plan{};
};

namespace detail {

/// Shared tail of the iterative solvers: candidate = last iterate,
/// residual re-evaluated independently, status derived from precondition
/// results, the residual, and the stop reason.
template <EtaSpace S>
void finish_solve(const S& space, const SelfMap<typename S::point_type>& map,
                  const SolveConfig& config, SolveReport<typename S::point_type>& report) {
  using P = typename S::point_type;
  const P candidate = report.trace.iterates.back();
  P image = map.apply(candidate);
  if (!space.in_domain(image))
    throw map_domain_error(map.description + " left the domain at the residual check: " +
                           space.label(image));
  report.fixed_point = candidate;
  report.residual = space.derived(candidate, image);
  report.iterations = report.trace.steps();
  if (!report.preconditions_ok())
    report.status = SolveStatus::precondition_failed;
  else if (report.trace.stop == StopReason::cycle_detected)
    report.status = SolveStatus::cycle_detected;
  else if (report.residual <= config.tol)
    report.status = SolveStatus::converged;
  else
    report.status = SolveStatus::max_iter;
}

inline Precheck eta_condition_precheck(const EtaConditionCheck& cond) {
  Precheck check;
  check.status = cond.passed ? CheckStatus::pass : CheckStatus::fail;
  check.measured = cond.tail_max;
  check.bound = cond.bound;
  check.note = "max eta over the trailing " + std::to_string(cond.window_used) +
               " iterates vs 1/k";
  return check;
}

}  // namespace detail

/// Contraction iteration: estimates k, runs the orbit, checks the orbit
/// eta condition, and reports. A failed precondition downgrades the
/// status to precondition_failed but the iterate and residual are still
/// reported, labelled unguaranteed.
template <EtaSpace S>
SolveReport<typename S::point_type> solve_banach(const S& space,
                                                 const SelfMap<typename S::point_type>& map,
                                                 const typename S::point_type& x0,
                                                 const SolveConfig& config = {}) {
  using P = typename S::point_type;
  SolveReport<P> report;

  const ContractionEstimate<P> est = estimate_contraction(space, map, config.plan);
  Precheck kcheck;
  kcheck.status = est.k_hat < 1.0 ? CheckStatus::pass : CheckStatus::fail;
  kcheck.measured = est.k_hat;
  kcheck.bound = 1.0;
  kcheck.note = (est.exact ? std::string("exact max over all ")
                           : std::string("sampled lower bound over ")) +
                std::to_string(est.pairs_used) + " pairs; witness (" +
                space.label(est.witness_a) + ", " + space.label(est.witness_b) + ")";
  report.preconditions.emplace_back("contraction_factor", kcheck);

  report.trace = picard_orbit(space, map, x0, config.max_iter, config.tol);

  Precheck echeck;
  if (est.k_hat < 1.0) {
    echeck = detail::eta_condition_precheck(
        orbit_eta_condition(report.trace, est.k_hat, config.tail_window));
  } else {
    echeck.status = CheckStatus::unverified;
    echeck.measured = report.trace.eta_tail_max(config.tail_window);
    echeck.bound = 0.0;
    echeck.note = "not applicable: contraction factor is not below 1";
  }
  report.preconditions.emplace_back("orbit_eta_limit", echeck);

  detail::finish_solve(space, map, config, report);
  return report;
}

/// The n_power-fold composition of map, with every intermediate image
/// domain-checked. n_power = 1 returns map unchanged.
template <EtaSpace S>
SelfMap<typename S::point_type> iterate_power_map(const S& space,
                                                  const SelfMap<typename S::point_type>& map,
                                                  std::size_t n_power) {
  using P = typename S::point_type;
  if (n_power < 1) throw contract_error("map power must be at least 1");
  if (n_power == 1) return map;
  auto shared = std::make_shared<const S>(space);
  const std::string desc = map.description + " iterated " + std::to_string(n_power) + " times";
  auto base = map.apply;
  SelfMap<P> powered;
  powered.description = desc;
  powered.apply = [shared, base, n_power, desc](const P& p) {
    P q = p;
    for (std::size_t i = 0; i < n_power; ++i) {
      q = base(q);
      if (!shared->in_domain(q))
        throw map_domain_error(desc + " left the domain at an inner iterate: " +
                               shared->label(q));
    }
    return q;
  };
  return powered;
}

/// Runs solve_banach on the n_power-fold composition, then additionally
/// reports whether the found point is fixed under the base map itself
/// (check "base_map_fixed", measured = D(x*, Tx*)).
template <EtaSpace S>
SolveReport<typename S::point_type> solve_banach_iterate_power(
    const S& space, const SelfMap<typename S::point_type>& map, std::size_t n_power,
    const typename S::point_type& x0, const SolveConfig& config = {}) {
  using P = typename S::point_type;
  const SelfMap<P> powered = iterate_power_map(space, map, n_power);
  SolveReport<P> report = solve_banach(space, powered, x0, config);
  if (report.fixed_point) {
    P image = map.apply(*report.fixed_point);
    if (!space.in_domain(image))
      throw map_domain_error(map.description + " left the domain at the base-map check: " +
                             space.label(image));
    Precheck base_check;
    base_check.measured = space.derived(*report.fixed_point, image);
    base_check.bound = config.tol;
    base_check.status =
        base_check.measured <= config.tol ? CheckStatus::pass : CheckStatus::fail;
    base_check.note = "residual of the base map at the composed fixed point";
    report.preconditions.emplace_back("base_map_fixed", base_check);
  }
  return report;
}

/// Strict contraction on a finite space: D(Tx,Ty) < D(x,y) is verified
/// exhaustively over all distinct pairs, the orbit then reaches its fixed
/// point in at most |X| steps (a revisit would repeat a step distance,
/// contradicting strict decrease), and uniqueness is confirmed by scanning
/// every point. Iteration is attempted even when strictness fails.
inline SolveReport<std::size_t> solve_strict_compact(const FiniteSpace& space,
                                                     const SelfMap<std::size_t>& map,
                                                     std::size_t x0) {
  if (!space.in_domain(x0))
    throw contract_error("orbit start lies outside the space");
  const std::size_t n = space.size();
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) {
    image[i] = map.apply(i);
    if (!space.in_domain(image[i]))
      throw map_domain_error(map.description + " left the domain at " + space.label(i));
  }

  Precheck strict;
  strict.status = CheckStatus::pass;
  strict.bound = 0.0;
  strict.measured = 0.0;
  bool have_pair = false;
  for (std::size_t i = 0; i < n && strict.status == CheckStatus::pass; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double slack = space.derived(image[i], image[j]) - space.derived(i, j);
      if (!have_pair || slack > strict.measured) strict.measured = slack;
      have_pair = true;
      if (slack >= 0.0) {
        strict.status = CheckStatus::fail;
        strict.note = "witness pair (" + space.label(i) + ", " + space.label(j) + ")";
        break;
      }
    }
  }
  if (strict.status == CheckStatus::pass)
    strict.note = have_pair ? "exhaustive over all distinct pairs"
                            : "vacuous: single-point space";

  SolveReport<std::size_t> report;
  report.preconditions.emplace_back("strict_contraction", strict);
  report.trace = picard_orbit(space, map, x0, n + 1, 0.0);
  // stop_tol 0 never fires; the orbit ends on the first revisit, which for
  // a genuinely strict map is the fixed point revisiting itself.
  const std::size_t last = report.trace.iterates.back();
  const bool at_fixed = image[last] == last;

  std::size_t fixed_count = 0;
  std::size_t any_fixed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (image[i] == i) {
      ++fixed_count;
      any_fixed = i;
    }
  }
  Precheck unique;
  unique.measured = double(fixed_count);
  unique.bound = 1.0;
  unique.status = fixed_count == 1 ? CheckStatus::pass : CheckStatus::fail;
  unique.note = "exhaustive fixed-point scan";
  report.preconditions.emplace_back("unique_fixed_point", unique);

  if (strict.status == CheckStatus::pass && fixed_count != 1)
    throw inconsistent_data_error(
        "strict contraction verified but the fixed-point scan found " +
        std::to_string(fixed_count) + " fixed points");
  if (strict.status == CheckStatus::pass && !at_fixed)
    throw inconsistent_data_error(
        "strict contraction verified but the orbit failed to settle within " +
        std::to_string(n) + " steps");

  // Iterations = steps taken before first sitting on a fixed point; the
  // trailing self-revisit that ends the orbit is confirmation, not work.
  report.iterations = report.trace.steps();
  for (std::size_t idx = 0; idx < report.trace.iterates.size(); ++idx) {
    const std::size_t p = report.trace.iterates[idx];
    if (image[p] == p) {
      report.iterations = idx;
      break;
    }
  }
  if (at_fixed) {
    report.fixed_point = last;
    report.residual = space.derived(last, image[last]);
  } else if (fixed_count > 0) {
    report.fixed_point = any_fixed;
    report.residual = space.derived(any_fixed, image[any_fixed]);
  }
  if (!report.preconditions_ok())
    report.status = SolveStatus::precondition_failed;
  else
    report.status = SolveStatus::converged;
  return report;
}

/// The four coefficient evaluators of the combined contraction condition
/// D(Tx,Ty) <= alpha D(x,y) + beta D(x,Tx) + gamma D(y,Ty)
///            + delta (D(x,Ty) + D(y,Tx)).
template <typename P>
struct HardyRogersCoefficients {
  std::function<double(const P&, const P&)> alpha;
  std::function<double(const P&, const P&)> beta;
  std::function<double(const P&, const P&)> gamma;
  std::function<double(const P&, const P&)> delta;

  static HardyRogersCoefficients constants(double a, double b, double c, double d) {
    HardyRogersCoefficients coeffs;
    coeffs.alpha = [a](const P&, const P&) { return a; };
    coeffs.beta = [b](const P&, const P&) { return b; };
    coeffs.gamma = [c](const P&, const P&) { return c; };
    coeffs.delta = [d](const P&, const P&) { return d; };
    return coeffs;
  }
};

/// Combined-coefficient contraction: lambda = max over sampled ordered
/// pairs of alpha + beta + gamma + 2 eta delta (exact on finite domains)
/// must be below 1, sup eta below 1/lambda. The proof forces each step to
/// contract by lambda; that is monitored, and a violation under passing
/// preconditions means the coefficients do not actually satisfy the
/// contraction condition, raised as inconsistent_data_error.
template <EtaSpace S>
SolveReport<typename S::point_type> solve_hardy_rogers(
    const S& space, const SelfMap<typename S::point_type>& map,
    const HardyRogersCoefficients<typename S::point_type>& coeffs,
    const typename S::point_type& x0, const SolveConfig& config = {}) {
  using P = typename S::point_type;
  const std::vector<P> pts = space.sample_points(config.plan);

  double lambda = 0.0;
  double sup_eta = 1.0;
  auto coefficient = [](const std::function<double(const P&, const P&)>& f,
                        const char* name, const P& p, const P& q,
                        const std::string& pair) {
    const double v = f(p, q);
    if (!std::isfinite(v) || v < 0.0 || v >= 1.0)
      throw data_error(std::string(name) + pair + " = " + std::to_string(v) +
                       " falls outside [0,1)");
    return v;
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      const std::string pair =
          "(" + space.label(pts[i]) + "," + space.label(pts[j]) + ")";
      const double a = coefficient(coeffs.alpha, "alpha", pts[i], pts[j], pair);
      const double b = coefficient(coeffs.beta, "beta", pts[i], pts[j], pair);
      const double c = coefficient(coeffs.gamma, "gamma", pts[i], pts[j], pair);
      const double d = coefficient(coeffs.delta, "delta", pts[i], pts[j], pair);
      const double eta = space.eta(pts[i], pts[j]);
      lambda = std::max(lambda, a + b + c + 2.0 * eta * d);
      sup_eta = std::max(sup_eta, eta);
    }
  }
  const std::string scope = S::finite_domain
                                ? std::string("exact max over all ordered pairs")
                                : std::string("sampled over ") +
                                      std::to_string(pts.size()) + " points";

  SolveReport<P> report;
  Precheck lcheck;
  lcheck.status = lambda < 1.0 ? CheckStatus::pass : CheckStatus::fail;
  lcheck.measured = lambda;
  lcheck.bound = 1.0;
  lcheck.note = scope;
  report.preconditions.emplace_back("lambda", lcheck);

  Precheck scheck;
  scheck.measured = sup_eta;
  scheck.bound = lambda > 0.0 ? 1.0 / lambda : std::numeric_limits<double>::infinity();
  scheck.status = sup_eta < scheck.bound ? CheckStatus::pass : CheckStatus::fail;
  scheck.note = scope;
  report.preconditions.emplace_back("sup_eta", scheck);

  report.trace = picard_orbit(space, map, x0, config.max_iter, config.tol);

  Precheck echeck;
  if (lambda < 1.0) {
    echeck = detail::eta_condition_precheck(
        orbit_eta_condition(report.trace, lambda, config.tail_window));
  } else {
    echeck.status = CheckStatus::unverified;
    echeck.measured = report.trace.eta_tail_max(config.tail_window);
    echeck.bound = 0.0;
    echeck.note = "not applicable: lambda is not below 1";
  }
  report.preconditions.emplace_back("orbit_eta_limit", echeck);

  if (report.preconditions_ok()) {
    const auto& d = report.trace.step_distances;
    for (std::size_t i = 1; i < d.size(); ++i) {
      if (d[i] > lambda * d[i - 1] * (1.0 + 1e-9))
        throw inconsistent_data_error(
            "step " + std::to_string(i) + " broke the contraction monitor: " +
            std::to_string(d[i]) + " > lambda * " + std::to_string(d[i - 1]));
    }
  }

  detail::finish_solve(space, map, config, report);
  return report;
}

/// Step-rate certificate for an orbit y_n claimed to contract by lambda:
/// every step must satisfy d_n <= lambda d_{n-1} (tiny relative slack) and
/// the eta tail must stay below 1/lambda. Passing certifies the Cauchy
/// property this rate guarantees.
struct RateCheck {
  bool passed = false;
  bool steps_ok = true;
  std::optional<std::size_t> first_violation;
  double max_ratio = 0.0;
  double eta_tail_max = 0.0;
  double eta_bound = 0.0;
};

template <typename P>
RateCheck check_cauchy_rate(const OrbitTrace<P>& trace, double lambda,
                            std::size_t tail_window = 16) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw contract_error("rate must lie in (0,1)");
  RateCheck check;
  const auto& d = trace.step_distances;
  for (std::size_t i = 1; i < d.size(); ++i) {
    bool ok;
    if (d[i - 1] == 0.0) {
      ok = d[i] == 0.0;
    } else {
      check.max_ratio = std::max(check.max_ratio, d[i] / d[i - 1]);
      ok = d[i] <= lambda * d[i - 1] * (1.0 + 1e-9);
    }
    if (!ok && !check.first_violation) {
      check.steps_ok = false;
      check.first_violation = i;
    }
  }
  check.eta_tail_max = trace.eta_tail_max(tail_window);
  check.eta_bound = 1.0 / lambda;
  check.passed = check.steps_ok && check.eta_tail_max < check.eta_bound;
  return check;
}

}  // namespace etametric
