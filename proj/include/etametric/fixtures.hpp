#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "axioms.hpp"
#include "fixed_point.hpp"
#include "spaces.hpp"

namespace etametric {

/// Knobs for the parameterized catalog entries: alpha scales the second
/// coordinate of the three-point cone distances, truncation bounds the
/// naturals-with-infinity table, grid_nodes discretizes the function space.
struct FixtureParams {
  double alpha = 0.0;
  std::size_t truncation = 64;
  std::size_t grid_nodes = 33;
};

/// Outcomes the entry is built to reproduce under default tolerances.
struct Expected {
  bool axioms_pass = true;
  std::optional<double> type_constant;  // sup of the minimal scale, if pinned
  std::optional<double> fixed_point;    // of the bundled map, if any
};

struct Fixture {
  std::string name;
  std::string summary;
  std::variant<std::monostate, FiniteSpace, IntervalSpace> space;
  std::optional<SelfMap<double>> interval_map;
  std::optional<double> default_x0;
  std::optional<double> hr_alpha;  // constant first coefficient for the combined scheme
  Expected expected;

  bool finite() const { return std::holds_alternative<FiniteSpace>(space); }
  const FiniteSpace& finite_space() const {
    if (!finite()) throw contract_error("fixture " + name + " is not a finite space");
    return std::get<FiniteSpace>(space);
  }
  const IntervalSpace& interval_space() const {
    if (!std::holds_alternative<IntervalSpace>(space))
      throw contract_error("fixture " + name + " is not an interval space");
    return std::get<IntervalSpace>(space);
  }
};

inline std::vector<std::string> fixture_names() {
  return {"eta_metric_3pt", "function_space",  "half_map",
          "nat_infinity",   "square_map",      "three_point_cone",
          "three_point_cone_sin"};
}

namespace detail {

/// Three points labelled 1,2,3 in the plane-ordered cone with distances
/// 80, 1000, 600 scaled into (1, alpha).
inline FiniteSpace three_point_space(double alpha,
                                     const std::function<double(double)>& weight,
                                     double distance_scale = 1.0) {
  const ConeSpace cone = ConeSpace::orthant(2, Norm::max_abs);
  const std::vector<std::string> labels = {"1", "2", "3"};
  const double base[3][3] = {{0.0, 80.0, 1000.0}, {80.0, 0.0, 600.0}, {1000.0, 600.0, 0.0}};
  return FiniteSpace::from_tables(
      labels, cone,
      [&](std::size_t i, std::size_t j) {
        const double s = base[i][j] * distance_scale;
        return Vec{s, s * alpha};
      },
      [&](std::size_t i, std::size_t j) {
        return 1.0 + weight(double(i + 1)) + weight(double(j + 1));
      });
}

inline FiniteSpace nat_infinity_space(std::size_t truncation) {
  if (truncation < 2) throw contract_error("truncation must keep at least 1 and 2");
  std::vector<std::string> labels;
  labels.reserve(truncation + 1);
  for (std::size_t m = 1; m <= truncation; ++m) labels.push_back(std::to_string(m));
  labels.push_back("inf");
  const std::size_t inf = truncation;  // index of the sentinel
  const ConeSpace cone = ConeSpace::orthant(1, Norm::max_abs);

  auto recip = [&](std::size_t i) { return i == inf ? 0.0 : 1.0 / double(i + 1); };
  auto even_like = [&](std::size_t i) { return i == inf || (i + 1) % 2 == 0; };
  auto dist = [&](std::size_t i, std::size_t j) {
    if (i == j) return Vec{0.0};
    if (even_like(i) && even_like(j)) return Vec{std::abs(recip(i) - recip(j))};
    if (i == inf || j == inf) return Vec{1.0};  // odd paired with the sentinel
    if ((i + 1) % 2 == 1 && (j + 1) % 2 == 1) return Vec{5.0};
    return Vec{2.0};
  };
  return FiniteSpace::from_tables(labels, cone, dist,
                                  [](std::size_t, std::size_t) { return 3.0; });
}

inline FiniteSpace function_space(std::size_t grid_nodes) {
  if (grid_nodes < 2) throw contract_error("function grid needs at least 2 nodes");
  struct Entry {
    const char* label;
    double (*eval)(double);
  };
  static const Entry family[] = {
      {"zero", [](double) { return 0.0; }},
      {"one", [](double) { return 1.0; }},
      {"t", [](double t) { return t; }},
      {"t2", [](double t) { return t * t; }},
      {"t3", [](double t) { return t * t * t; }},
      {"1-t", [](double t) { return 1.0 - t; }},
      {"2t-1", [](double t) { return 2.0 * t - 1.0; }},
      {"t-t2", [](double t) { return t - t * t; }},
  };
  const std::size_t count = sizeof(family) / sizeof(family[0]);

  std::vector<std::vector<double>> values(count, std::vector<double>(grid_nodes));
  for (std::size_t f = 0; f < count; ++f)
    for (std::size_t g = 0; g < grid_nodes; ++g)
      values[f][g] = family[f].eval(double(g) / double(grid_nodes - 1));

  std::vector<std::string> labels;
  for (std::size_t f = 0; f < count; ++f) labels.emplace_back(family[f].label);

  auto sup_diff = [&](std::size_t i, std::size_t j) {
    double sup = 0.0;
    for (std::size_t g = 0; g < grid_nodes; ++g)
      sup = std::max(sup, std::abs(values[i][g] - values[j][g]));
    return sup;
  };
  auto sup_abs = [&](std::size_t i) {
    double sup = 0.0;
    for (std::size_t g = 0; g < grid_nodes; ++g)
      sup = std::max(sup, std::abs(values[i][g]));
    return sup;
  };

  const ConeSpace cone = ConeSpace::orthant(1, Norm::max_abs);
  // Grid view of continuous functions under the squared sup distance; the
  // scale uses sup norms for both arguments, the only grid-computable
  // reading of |x(t)| + |y(t)| + 2. Squaring costs a triangle factor of at
  // most 2, which the scale's floor of 2 always covers.
  return FiniteSpace::from_tables(
      labels, cone,
      [&](std::size_t i, std::size_t j) {
        const double s = sup_diff(i, j);
        return Vec{s * s};
      },
      [&](std::size_t i, std::size_t j) { return sup_abs(i) + sup_abs(j) + 2.0; });
}

inline IntervalSpace squared_difference_interval(double lo, double hi) {
  const ConeSpace cone = ConeSpace::orthant(1, Norm::max_abs);
  return IntervalSpace(
      lo, hi, cone, [](double x, double y) { return Vec{(x - y) * (x - y)}; },
      [](double x, double y) { return x + y + 2.0; });
}

}  // namespace detail

/// Catalog lookup. Unknown names raise lookup_error listing the catalog.
inline Fixture fixture(const std::string& name, const FixtureParams& params = {}) {
  Fixture f;
  f.name = name;
  if (name == "three_point_cone") {
    f.summary = "three points in a plane-ordered cone, scale 1 + x + y";
    f.space = detail::three_point_space(params.alpha, [](double x) { return x; });
    f.expected.type_constant = 1000.0 / 680.0;
    return f;
  }
  if (name == "three_point_cone_sin") {
    f.summary = "three points in a plane-ordered cone, scale 1 + sin x + sin y";
    f.space =
        detail::three_point_space(params.alpha, [](double x) { return std::sin(x); });
    return f;
  }
  if (name == "eta_metric_3pt") {
    f.summary = "three-point table that is not a metric, scale x/2 + y";
    const ConeSpace cone = ConeSpace::orthant(1, Norm::max_abs);
    const double d[3][3] = {{0.0, 0.2, 0.5}, {0.2, 0.0, 0.25}, {0.5, 0.25, 0.0}};
    f.space = FiniteSpace::from_tables(
        {"1", "2", "3"}, cone,
        [&](std::size_t i, std::size_t j) { return Vec{d[i][j]}; },
        [](std::size_t i, std::size_t j) { return double(i + 1) / 2.0 + double(j + 1); });
    f.expected.type_constant = 10.0 / 9.0;
    return f;
  }
  if (name == "nat_infinity") {
    f.summary = "naturals up to a truncation plus a sentinel at infinity, scale 3";
    f.space = detail::nat_infinity_space(params.truncation);
    return f;
  }
  if (name == "function_space") {
    f.summary = "polynomials on a grid under the squared sup distance";
    f.space = detail::function_space(params.grid_nodes);
    return f;
  }
  if (name == "half_map") {
    f.summary = "halving map under the squared difference distance";
    f.space = detail::squared_difference_interval(0.0, 1024.0);
    f.interval_map = SelfMap<double>{[](const double& x) { return x / 2.0; }, "x/2"};
    f.default_x0 = 1.0;
    f.expected.fixed_point = 0.0;
    return f;
  }
  if (name == "square_map") {
    f.summary = "squaring map on [0, 1/4] under the squared difference distance";
    f.space = detail::squared_difference_interval(0.0, 0.25);
    f.interval_map = SelfMap<double>{[](const double& x) { return x * x; }, "x^2"};
    f.default_x0 = 0.25;
    f.hr_alpha = 0.25;
    f.expected.fixed_point = 0.0;
    return f;
  }
  std::string names;
  for (const std::string& n : fixture_names()) {
    if (!names.empty()) names += ", ";
    names += n;
  }
  throw lookup_error("unknown fixture '" + name + "'; valid names: " + names);
}

/// Convenience check for the sine-scaled three-point table; distance_scale
/// exercises the scale invariance of the triangle condition.
inline AxiomReport check_axioms_sin_variant(double tol = kDefaultTol, double alpha = 0.0,
                                            double distance_scale = 1.0) {
  const FiniteSpace space = detail::three_point_space(
      alpha, [](double x) { return std::sin(x); }, distance_scale);
  CheckOptions opt;
  opt.tol = tol;
  return check_axioms(space, opt);
}

}  // namespace etametric
