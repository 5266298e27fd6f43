#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace etametric {

/// Deterministic sampling budget for spaces that cannot be enumerated.
/// `count` is the number of points drawn per axis; the seed shifts the
/// low-discrepancy sequence so distinct seeds probe distinct point sets.
struct SamplingPlan {
  std::size_t count = 64;
  std::uint64_t seed = 1;
};

/// Points of [lo, hi]: both endpoints plus a golden-ratio Weyl sequence
/// offset by the seed, sorted ascending. Deterministic in the plan.
inline std::vector<double> sample_interval(double lo, double hi, const SamplingPlan& plan) {
  if (!(lo < hi)) throw contract_error("interval sampling needs lo < hi");
  const std::size_t count = plan.count < 2 ? 2 : plan.count;
  std::vector<double> pts;
  pts.reserve(count);
  pts.push_back(lo);
  pts.push_back(hi);
  // Golden-ratio step fills the interval near-uniformly at every prefix.
  constexpr double kStep = 0.6180339887498949;
  const double offset =
      static_cast<double>((plan.seed * 0x9E3779B97F4A7C15ULL) >> 11) / 9007199254740992.0;
  double u = offset;
  for (std::size_t k = 2; k < count; ++k) {
    u += kStep;
    u -= std::floor(u);
    pts.push_back(lo + (hi - lo) * u);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace etametric
