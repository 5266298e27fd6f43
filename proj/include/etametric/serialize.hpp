#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "axioms.hpp"
#include "classify.hpp"
#include "fixed_point.hpp"
#include "topology.hpp"

namespace etametric {

/// JSON has no vocabulary for non-finite reals; they are emitted as
/// strings so reports never silently turn a sentinel bound into null.
inline nlohmann::json json_real(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline nlohmann::json json_vec(const Vec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(json_real(v[i]));
  return a;
}

inline nlohmann::json json_points(const std::array<std::string, 3>& points) {
  nlohmann::json a = nlohmann::json::array();
  for (const std::string& p : points)
    if (!p.empty()) a.push_back(p);
  return a;
}

inline nlohmann::json axiom_report_json(const AxiomReport& report) {
  nlohmann::json violations = nlohmann::json::array();
  for (const AxiomViolation& v : report.violations) {
    violations.push_back({{"kind", to_string(v.kind)},
                          {"points", json_points(v.points)},
                          {"lhs", json_vec(v.lhs)},
                          {"rhs", json_vec(v.rhs)},
                          {"slack", json_real(v.slack)}});
  }
  nlohmann::json audit = nlohmann::json::array();
  for (const TripleCheck& c : report.audit) {
    audit.push_back({{"points", json_points(c.points)},
                     {"lhs", json_vec(c.lhs)},
                     {"rhs", json_vec(c.rhs)},
                     {"slack", json_real(c.slack)},
                     {"tol_consumed", json_real(c.tol_consumed)},
                     {"passed", c.passed}});
  }
  return {{"ok", report.ok()},
          {"d1_ok", report.d1_ok},
          {"d2_ok", report.d2_ok},
          {"d3_ok", report.d3_ok},
          {"pairs_checked", report.pairs_checked},
          {"triples_checked", report.triples_checked},
          {"violations", violations},
          {"violations_truncated", report.violations_truncated},
          {"audit", audit}};
}

inline nlohmann::json real_table_json(const RealTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < table.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < table.size(); ++j) row.push_back(json_real(table.at(i, j)));
    rows.push_back(row);
  }
  return {{"labels", table.labels}, {"values", rows}};
}

inline nlohmann::json classification_json(const Classification& c,
                                          const std::vector<std::string>& labels) {
  nlohmann::json j = {{"is_metric", c.is_metric},
                      {"type_constant", json_real(c.type_constant)}};
  if (!c.is_metric) {
    j["witness"] = {labels[c.witness[0]], labels[c.witness[1]], labels[c.witness[2]]};
    j["witness_lhs"] = json_real(c.witness_lhs);
    j["witness_rhs"] = json_real(c.witness_rhs);
  }
  return j;
}

inline nlohmann::json verdict_json(const ConvergenceVerdict& verdict) {
  nlohmann::json trail = nlohmann::json::array();
  for (const auto& [n, value] : verdict.trail)
    trail.push_back({{"n", n}, {"value", json_real(value)}});
  return {{"status", to_string(verdict.status)},
          {"witness", verdict.witness},
          {"thresholds_met", verdict.thresholds_met},
          {"trail", trail}};
}

inline nlohmann::json discontinuity_json(const DiscontinuityFinding& finding) {
  nlohmann::json trail = nlohmann::json::array();
  for (const auto& [n, value] : finding.probe_trail)
    trail.push_back({{"n", n}, {"value", json_real(value)}});
  return {{"probe_trail_limit", json_real(finding.probe_trail_limit)},
          {"probe_at_limit", json_real(finding.probe_at_limit)},
          {"gap", json_real(finding.gap)},
          {"discontinuous", finding.discontinuous},
          {"probe_trail", trail}};
}

/// `point` renders a domain point: a label string on finite spaces, a
/// json_real on interval spaces, so numeric fixed points stay numbers.
template <typename P>
nlohmann::json solve_report_json(const SolveReport<P>& report,
                                 const std::function<nlohmann::json(const P&)>& point) {
  nlohmann::json checks = nlohmann::json::object();
  for (const auto& [name, check] : report.preconditions) {
    checks[name] = {{"status", to_string(check.status)},
                    {"measured", json_real(check.measured)},
                    {"bound", json_real(check.bound)},
                    {"note", check.note}};
  }
  nlohmann::json steps = nlohmann::json::array();
  for (double d : report.trace.step_distances) steps.push_back(json_real(d));
  nlohmann::json j = {{"status", to_string(report.status)},
                      {"residual", json_real(report.residual)},
                      {"iterations", report.iterations},
                      {"preconditions", checks},
                      {"stop_reason", to_string(report.trace.stop)},
                      {"step_distances", steps}};
  if (report.fixed_point)
    j["fixed_point"] = point(*report.fixed_point);
  else
    j["fixed_point"] = nullptr;
  return j;
}

/// Canonical dump: two-space indent, sorted keys (the object type is
/// ordered), trailing newline. Parsing this output and dumping it again
/// reproduces the bytes exactly.
inline std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace etametric
