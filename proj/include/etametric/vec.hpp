#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace etametric {

/// Element of the ordering space: a real vector of fixed finite dimension.
/// Construction does not require finite coordinates; the checks that care
/// (axiom verification, space accessors) report non-finite entries as data
/// errors naming the offending pair.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::vector<double> coords) : coords_(std::move(coords)) {}
  Vec(std::initializer_list<double> coords) : coords_(coords) {}

  static Vec zero(std::size_t dim) { return Vec(std::vector<double>(dim, 0.0)); }

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

  bool is_finite() const {
    for (double c : coords_) {
      if (!std::isfinite(c)) return false;
    }
    return true;
  }

  friend Vec operator+(Vec a, const Vec& b) {
    detail_check_dims(a, b);
    for (std::size_t i = 0; i < a.dim(); ++i) a.coords_[i] += b.coords_[i];
    return a;
  }

  friend Vec operator-(Vec a, const Vec& b) {
    detail_check_dims(a, b);
    for (std::size_t i = 0; i < a.dim(); ++i) a.coords_[i] -= b.coords_[i];
    return a;
  }

  friend Vec operator*(double s, Vec a) {
    for (double& c : a.coords_) c *= s;
    return a;
  }

  friend bool operator==(const Vec& a, const Vec& b) { return a.coords_ == b.coords_; }

 private:
  static void detail_check_dims(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) {
      throw contract_error("vector dimensions differ: " + std::to_string(a.dim()) +
                           " vs " + std::to_string(b.dim()));
    }
  }

  std::vector<double> coords_;
};

}  // namespace etametric
