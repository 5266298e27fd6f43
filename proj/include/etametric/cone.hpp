#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "vec.hpp"

namespace etametric {

/// Absolute comparison tolerance used by order predicates unless the caller
/// overrides it.
inline constexpr double kDefaultTol = 1e-9;

/// Margin used for interiority preconditions that do not expose their own
/// margin parameter.
inline constexpr double kTinyMargin = 1e-12;

enum class Norm { max_abs, sum_abs, euclidean };

namespace detail {

/// Euclidean distance from v to { G c : c >= 0 } where the columns of G are
/// `rays`. Lawson-Hanson active-set NNLS on the normal equations; ray counts
/// are expected to stay small, so dense Gaussian elimination is adequate.
inline double nnls_distance(const std::vector<Vec>& rays, const Vec& v) {
  const std::size_t m = v.dim();
  const std::size_t k = rays.size();

  auto dot_col = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += rays[a][i] * rays[b][i];
    return s;
  };
  auto dot_col_vec = [&](std::size_t a, const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += rays[a][i] * w[i];
    return s;
  };

  std::vector<double> coef(k, 0.0);
  std::vector<bool> passive(k, false);
  std::vector<double> residual(m);
  for (std::size_t i = 0; i < m; ++i) residual[i] = v[i];

  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(v[i]));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(rays[j][i]));
  const double eps = 1e-12 * (1.0 + scale) * (1.0 + scale);

  // Solves the least squares subproblem restricted to the passive set.
  auto solve_passive = [&](std::vector<double>& z) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < k; ++j)
      if (passive[j]) idx.push_back(j);
    const std::size_t p = idx.size();
    std::vector<double> a(p * p), b(p);
    for (std::size_t r = 0; r < p; ++r) {
      b[r] = dot_col_vec(idx[r], v.coords());
      for (std::size_t c = 0; c < p; ++c) a[r * p + c] = dot_col(idx[r], idx[c]);
    }
    // Gaussian elimination with partial pivoting; tiny ridge keeps duplicate
    // rays from producing a singular system.
    for (std::size_t r = 0; r < p; ++r) a[r * p + r] += 1e-14 * (1.0 + a[r * p + r]);
    for (std::size_t col = 0; col < p; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < p; ++r)
        if (std::abs(a[r * p + col]) > std::abs(a[piv * p + col])) piv = r;
      if (piv != col) {
        for (std::size_t c = 0; c < p; ++c) std::swap(a[col * p + c], a[piv * p + c]);
        std::swap(b[col], b[piv]);
      }
      const double d = a[col * p + col];
      if (d == 0.0) continue;
      for (std::size_t r = col + 1; r < p; ++r) {
        const double f = a[r * p + col] / d;
        if (f == 0.0) continue;
        for (std::size_t c = col; c < p; ++c) a[r * p + c] -= f * a[col * p + c];
        b[r] -= f * b[col];
      }
    }
    std::vector<double> x(p, 0.0);
    for (std::size_t r = p; r-- > 0;) {
      double s = b[r];
      for (std::size_t c = r + 1; c < p; ++c) s -= a[r * p + c] * x[c];
      x[r] = a[r * p + r] != 0.0 ? s / a[r * p + r] : 0.0;
    }
    z.assign(k, 0.0);
    for (std::size_t r = 0; r < p; ++r) z[idx[r]] = x[r];
  };

  auto recompute_residual = [&]() {
    for (std::size_t i = 0; i < m; ++i) {
      double s = v[i];
      for (std::size_t j = 0; j < k; ++j)
        if (coef[j] != 0.0) s -= coef[j] * rays[j][i];
      residual[i] = s;
    }
  };

  const std::size_t max_outer = 3 * k + 12;
  for (std::size_t outer = 0; outer < max_outer; ++outer) {
    // Most negative gradient over the active set decides the next entrant.
    double best = eps;
    std::size_t entrant = k;
    for (std::size_t j = 0; j < k; ++j) {
      if (passive[j]) continue;
      const double w = dot_col_vec(j, residual);
      if (w > best) {
        best = w;
        entrant = j;
      }
    }
    if (entrant == k) break;
    passive[entrant] = true;

    std::vector<double> z;
    for (std::size_t inner = 0; inner <= k + 1; ++inner) {
      solve_passive(z);
      bool all_positive = true;
      for (std::size_t j = 0; j < k; ++j) {
        if (passive[j] && z[j] <= 0.0) {
          all_positive = false;
          break;
        }
      }
      if (all_positive) {
        coef = z;
        break;
      }
      double alpha = 1.0;
      for (std::size_t j = 0; j < k; ++j) {
        if (!passive[j] || z[j] > 0.0) continue;
        const double denom = coef[j] - z[j];
        if (denom > 0.0) alpha = std::min(alpha, coef[j] / denom);
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (!passive[j]) continue;
        coef[j] += alpha * (z[j] - coef[j]);
        if (coef[j] <= eps) {
          coef[j] = 0.0;
          passive[j] = false;
        }
      }
    }
    recompute_residual();
  }

  double norm2 = 0.0;
  for (std::size_t i = 0; i < m; ++i) norm2 += residual[i] * residual[i];
  return std::sqrt(norm2);
}

}  // namespace detail

/// Finite-dimensional ordering space: a real vector space together with a
/// closed pointed cone (the nonnegative orthant, or the nonnegative span of
/// explicit generator rays), a choice of norm, and a declared normal
/// constant K >= 1 bounding norms along the order: 0 <= x <= y implies
/// ||x|| <= K ||y||.
class ConeSpace {
 public:
  static ConeSpace orthant(std::size_t dim, Norm norm = Norm::max_abs,
                           double normal_constant = 1.0) {
    if (dim == 0) throw contract_error("ordering space dimension must be positive");
    ConeSpace s;
    s.dim_ = dim;
    s.norm_ = norm;
    s.normal_constant_ = validated_constant(normal_constant);
    return s;
  }

  static ConeSpace from_generators(std::vector<Vec> rays, Norm norm = Norm::max_abs,
                                   double normal_constant = 1.0) {
    if (rays.empty()) throw contract_error("a generator cone needs at least one ray");
    const std::size_t dim = rays.front().dim();
    if (dim == 0) throw contract_error("ordering space dimension must be positive");
    bool has_nonzero = false;
    for (const Vec& g : rays) {
      if (g.dim() != dim)
        throw contract_error("generator rays must share one dimension");
      if (!g.is_finite()) throw contract_error("generator rays must be finite");
      if (g.coords() != std::vector<double>(dim, 0.0)) has_nonzero = true;
    }
    if (!has_nonzero)
      throw contract_error("a generator cone needs a nonzero ray");
    // Pointedness: no ray's negation may lie back in the cone.
    for (const Vec& g : rays) {
      double mag = 0.0;
      for (std::size_t i = 0; i < dim; ++i) mag = std::max(mag, std::abs(g[i]));
      if (mag == 0.0) continue;
      if (detail::nnls_distance(rays, -1.0 * g) <= 1e-9 * mag)
        throw contract_error("generator cone is not pointed: a ray's negation lies in the cone");
    }
    ConeSpace s;
    s.dim_ = dim;
    s.norm_ = norm;
    s.normal_constant_ = validated_constant(normal_constant);
    s.rays_ = std::move(rays);
    return s;
  }

  std::size_t dim() const { return dim_; }
  Norm norm_kind() const { return norm_; }
  double normal_constant() const { return normal_constant_; }
  bool is_orthant() const { return rays_.empty(); }
  const std::vector<Vec>& generators() const { return rays_; }

  double norm(const Vec& v) const {
    check_dim(v);
    double s = 0.0;
    switch (norm_) {
      case Norm::max_abs:
        for (double c : v.coords()) s = std::max(s, std::abs(c));
        return s;
      case Norm::sum_abs:
        for (double c : v.coords()) s += std::abs(c);
        return s;
      case Norm::euclidean:
        for (double c : v.coords()) s += c * c;
        return std::sqrt(s);
    }
    return s;
  }

  /// Membership in the cone up to an absolute tolerance measured in the
  /// space norm. Orthant cones compare coordinates directly; generator cones
  /// solve the nonnegative-combination feasibility problem.
  bool contains(const Vec& v, double tol = kDefaultTol) const {
    check_dim(v);
    if (tol < 0.0) throw contract_error("tolerance must be nonnegative");
    if (!v.is_finite()) return false;
    if (is_orthant()) {
      for (double c : v.coords())
        if (c < -tol) return false;
      return true;
    }
    return feasibility_distance(v) <= tol + feasibility_fuzz(v);
  }

  /// The cone order: x <= y iff y - x lies in the cone.
  bool leq(const Vec& x, const Vec& y, double tol = kDefaultTol) const {
    return contains(y - x, tol);
  }

  /// Signed violation of membership: the smallest coordinate for orthant
  /// cones (clearance when inside, deficit when outside); for generator
  /// cones, 0 when inside and minus the distance to the cone when outside.
  double membership_slack(const Vec& v) const {
    check_dim(v);
    if (is_orthant()) {
      double s = v.dim() ? v[0] : 0.0;
      for (double c : v.coords()) s = std::min(s, c);
      return s;
    }
    const double dist = feasibility_distance(v);
    return dist <= feasibility_fuzz(v) ? 0.0 : -dist;
  }

  /// Strict interiority with an explicit positive margin. Orthant cones
  /// require every coordinate >= margin; generator cones require the axis
  /// offsets v +- margin e_i to stay feasible.
  bool strictly_interior(const Vec& v, double margin) const {
    check_dim(v);
    if (!(margin > 0.0)) throw contract_error("interiority margin must be positive");
    if (!v.is_finite()) return false;
    if (is_orthant()) {
      for (double c : v.coords())
        if (c < margin) return false;
      return true;
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      for (double sign : {1.0, -1.0}) {
        Vec probe = v;
        probe[i] += sign * margin;
        if (feasibility_distance(probe) > feasibility_fuzz(probe)) return false;
      }
    }
    return true;
  }

  /// Sampled lower estimate of the normal constant: sup ||x|| / ||y|| over
  /// generated pairs 0 <= x <= y, never below 1 and deterministic in the
  /// seed. For the orthant under the max or sum norm the norm is monotone
  /// along the order, so the constant is exactly 1.
  double estimate_normal_constant(std::size_t samples = 2000,
                                  std::uint64_t seed = 1) const {
    if (is_orthant() && (norm_ == Norm::max_abs || norm_ == Norm::sum_abs)) return 1.0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto member = [&]() {
      Vec x = Vec::zero(dim_);
      if (is_orthant()) {
        for (std::size_t i = 0; i < dim_; ++i) x[i] = unit(rng);
      } else {
        for (const Vec& g : rays_) x = x + unit(rng) * g;
      }
      return x;
    };
    double best = 1.0;
    for (std::size_t s = 0; s < samples; ++s) {
      const Vec x = member();
      const Vec y = x + member();
      const double ny = norm(y);
      if (ny <= 1e-300) continue;
      best = std::max(best, norm(x) / ny);
    }
    return best;
  }

 private:
  ConeSpace() = default;

  static double validated_constant(double k) {
    if (!(k >= 1.0) || !std::isfinite(k))
      throw contract_error("normal constant must be a finite value >= 1");
    return k;
  }

  void check_dim(const Vec& v) const {
    if (v.dim() != dim_) {
      throw contract_error("vector dimension " + std::to_string(v.dim()) +
                           " does not match ordering space dimension " +
                           std::to_string(dim_));
    }
  }

  double feasibility_distance(const Vec& v) const {
    return detail::nnls_distance(rays_, v);
  }

  double feasibility_fuzz(const Vec& v) const {
    double mag = 0.0;
    for (double c : v.coords()) mag = std::max(mag, std::abs(c));
    return 1e-12 * (1.0 + mag);
  }

  std::size_t dim_ = 0;
  Norm norm_ = Norm::max_abs;
  double normal_constant_ = 1.0;
  std::vector<Vec> rays_;
};

}  // namespace etametric
