#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "axioms.hpp"
#include "spaces.hpp"

namespace etametric {

namespace detail {

inline void validate_scalar_metric_table(const RealTable& d) {
  const std::size_t n = d.size();
  if (n == 0) throw contract_error("distance table must have at least one point");
  if (d.values.size() != n * n) throw contract_error("distance table must be n-by-n");
  for (std::size_t i = 0; i < n; ++i) {
    if (d.at(i, i) != 0.0)
      throw data_error("distance table has nonzero diagonal at " + d.labels[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = d.at(i, j);
      if (!std::isfinite(v) || v < 0.0)
        throw data_error("distance(" + d.labels[i] + "," + d.labels[j] +
                         ") must be finite and nonnegative");
      if (v != d.at(j, i))
        throw data_error("distance table is not symmetric at (" + d.labels[i] + "," +
                         d.labels[j] + ")");
    }
  }
}

}  // namespace detail

/// Pointwise least scale table making the scaled triangle hold with normal
/// constant 1: eta(x,z) = max(1, max over intermediates y of D(x,z) /
/// (D(x,y) + D(y,z))). Intermediate points with zero denominator are skipped
/// when the numerator is zero too; a zero denominator under a positive
/// numerator means no finite scale exists (an identity-axiom failure
/// upstream) and raises infeasible_error naming the triple.
inline RealTable minimal_eta(const RealTable& d) {
  detail::validate_scalar_metric_table(d);
  const std::size_t n = d.size();
  RealTable result = RealTable::zeros(d.labels);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = 0; z < n; ++z) {
      if (x == z) {
        result.at(x, z) = 1.0;
        continue;
      }
      double best = 1.0;
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        const double numer = d.at(x, z);
        const double denom = d.at(x, y) + d.at(y, z);
        if (denom == 0.0) {
          if (numer > 0.0) {
            throw infeasible_error("no finite scale fits (" + d.labels[x] + "," +
                                   d.labels[y] + "," + d.labels[z] +
                                   "): zero intermediate sum under a positive distance");
          }
          continue;
        }
        const double ratio = numer / denom;
        if (ratio > best) best = ratio;
      }
      result.at(x, z) = best;
    }
  }
  return result;
}

/// Outcome of classifying a scalar distance table by its minimal scale:
/// a metric when no triple needs scaling; otherwise a metric-type table
/// whose constant is the supremum of the minimal scale, with the triple
/// that attains it.
struct Classification {
  bool is_metric = true;
  double type_constant = 1.0;
  std::array<std::size_t, 3> witness{0, 0, 0};  // (x, y, z), y the intermediate
  double witness_lhs = 0.0;                      // D(x, z)
  double witness_rhs = 0.0;                      // D(x, y) + D(y, z)
};

inline Classification classify(const RealTable& d) {
  detail::validate_scalar_metric_table(d);
  const std::size_t n = d.size();
  Classification c;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = 0; z < n; ++z) {
      if (x == z) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        const double numer = d.at(x, z);
        const double denom = d.at(x, y) + d.at(y, z);
        if (denom == 0.0) {
          if (numer > 0.0)
            throw infeasible_error("no finite scale fits (" + d.labels[x] + "," +
                                   d.labels[y] + "," + d.labels[z] +
                                   "): zero intermediate sum under a positive distance");
          continue;
        }
        const double ratio = numer / denom;
        if (ratio > c.type_constant) {
          c.is_metric = false;
          c.type_constant = ratio;
          c.witness = {x, y, z};
          c.witness_lhs = numer;
          c.witness_rhs = denom;
        }
      }
    }
  }
  return c;
}

/// Upper bound on D(x, y) through the chain z_1 .. z_n (n >= 2), obtained by
/// folding the scaled triangle along the chain:
///   eta(x,y) ( D(x,z_1)
///            + sum_{j=1}^{n-1} [prod_{i=1}^{j} eta(z_i,y)] D(z_j,z_{j+1})
///            + [prod_{i=1}^{n-1} eta(z_i,y)] D(z_n,y) ).
template <EtaSpace S>
double chain_triangle_bound(const DerivedEtaMetric<S>& metric,
                            const typename S::point_type& x,
                            const typename S::point_type& y,
                            std::span<const typename S::point_type> chain) {
  const std::size_t n = chain.size();
  if (n < 2) throw contract_error("chain bound needs at least two intermediate points");
  double sum = metric(x, chain[0]);
  double prod = 1.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    prod *= metric.eta(chain[j], y);
    sum += prod * metric(chain[j], chain[j + 1]);
  }
  sum += prod * metric(chain[n - 1], y);
  return metric.eta(x, y) * sum;
}

template <EtaSpace S>
double chain_triangle_bound(const DerivedEtaMetric<S>& metric,
                            const typename S::point_type& x,
                            const typename S::point_type& y,
                            const std::vector<typename S::point_type>& chain) {
  return chain_triangle_bound(metric, x, y,
                              std::span<const typename S::point_type>(chain));
}

}  // namespace etametric
