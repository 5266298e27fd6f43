#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>

#include <etametric/etametric.hpp>

namespace {

using namespace etametric;

enum class Format { human, json, csv };

std::string real17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string human_real(double v) { return detail::shortest_double(v); }

std::string vec_text(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) s += ", ";
    s += human_real(v[i]);
  }
  return s + ")";
}

/// The positional source argument: a catalog name first, a table path second.
struct Source {
  std::optional<Fixture> fix;
  std::optional<FiniteSpace> table;

  bool finite() const { return table.has_value() || (fix && fix->finite()); }
  const FiniteSpace& finite_space() const {
    return table ? *table : fix->finite_space();
  }
};

Source resolve_source(const std::string& name_or_path, const FixtureParams& params) {
  Source src;
  try {
    src.fix = fixture(name_or_path, params);
    return src;
  } catch (const lookup_error&) {
  }
  std::ifstream in(name_or_path);
  if (!in) {
    std::string names;
    for (const std::string& n : fixture_names()) {
      if (!names.empty()) names += ", ";
      names += n;
    }
    throw lookup_error("'" + name_or_path +
                       "' is neither a fixture name nor a readable table; fixtures: " +
                       names);
  }
  src.table = parse_distance_table(in, name_or_path);
  return src;
}

/// Interval map builtins: half | square | affine A B | const C.
SelfMap<double> make_interval_map(const std::string& spec) {
  std::istringstream tokens(spec);
  std::string head;
  tokens >> head;
  auto read_real = [&](const char* what) {
    double v;
    if (!(tokens >> v))
      throw lookup_error("map '" + spec + "' is missing its " + what + " argument");
    return v;
  };
  auto reject_extra = [&] {
    std::string extra;
    if (tokens >> extra)
      throw lookup_error("map '" + spec + "' has a trailing argument '" + extra + "'");
  };
  if (head == "half") {
    reject_extra();
    return {[](const double& x) { return x / 2.0; }, "x/2"};
  }
  if (head == "square") {
    reject_extra();
    return {[](const double& x) { return x * x; }, "x^2"};
  }
  if (head == "affine") {
    const double a = read_real("slope");
    const double b = read_real("offset");
    reject_extra();
    return {[a, b](const double& x) { return a * x + b; },
            "affine " + human_real(a) + " " + human_real(b)};
  }
  if (head == "const") {
    const double c = read_real("value");
    reject_extra();
    return {[c](const double&) { return c; }, "const " + human_real(c)};
  }
  throw lookup_error("unknown map '" + spec +
                     "'; builtins: half, square, affine A B, const C");
}

/// Finite map files: one `map SRC DST` line per point; every point needs
/// exactly one entry.
SelfMap<std::size_t> load_map_file(const std::string& path, const FiniteSpace& space) {
  std::ifstream in(path);
  if (!in) throw lookup_error("cannot open map file '" + path + "'");
  std::vector<std::optional<std::size_t>> image(space.size());
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::string head;
    if (!(tokens >> head)) continue;
    if (head != "map") throw parse_error(line, "expected 'map SRC DST', got '" + head + "'");
    std::string from, to, extra;
    if (!(tokens >> from >> to))
      throw parse_error(line, "map entry needs two point labels");
    if (tokens >> extra)
      throw parse_error(line, "map entry has trailing token '" + extra + "'");
    const auto i = space.index_of(from);
    if (!i) throw parse_error(line, "unknown point '" + from + "'");
    const auto j = space.index_of(to);
    if (!j) throw parse_error(line, "unknown point '" + to + "'");
    if (image[*i]) throw parse_error(line, "duplicate map entry for '" + from + "'");
    image[*i] = *j;
  }
  for (std::size_t i = 0; i < space.size(); ++i)
    if (!image[i])
      throw parse_error(line == 0 ? 1 : line,
                        "map file has no entry for '" + space.label(i) + "'");
  std::vector<std::size_t> table(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) table[i] = *image[i];
  return {[table](const std::size_t& i) { return table.at(i); }, path};
}

std::size_t resolve_finite_point(const FiniteSpace& space, const std::string& token) {
  const auto i = space.index_of(token);
  if (!i) throw lookup_error("unknown point '" + token + "'");
  return *i;
}

double resolve_interval_point(const IntervalSpace& space, const std::string& token) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size())
    throw lookup_error("'" + token + "' is not a number");
  if (!space.in_domain(v))
    throw contract_error("point " + token + " lies outside [" + human_real(space.lo()) +
                         ", " + human_real(space.hi()) + "]");
  return v;
}

void print(const std::string& s) { std::cout << s; }

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string source;
  FixtureParams params;
  std::optional<double> tol;
  std::size_t samples = 64;
  std::uint64_t seed = 1;
  bool audit = false;
  Format format = Format::human;
};

int run_verify(const VerifyArgs& args) {
  const Source src = resolve_source(args.source, args.params);
  CheckOptions opt;
  opt.tol = args.tol.value_or(kDefaultTol);
  opt.plan.count = args.samples;
  opt.plan.seed = args.seed;
  opt.collect_audit = args.audit;

  AxiomReport report;
  if (src.finite()) {
    report = check_axioms(src.finite_space(), opt);
  } else {
    report = check_axioms(src.fix->interval_space(), opt);
  }

  if (args.format == Format::json) {
    print(dump_json(axiom_report_json(report)));
  } else if (args.format == Format::csv) {
    std::ostringstream out;
    out << "kind,x,y,z,slack\n";
    for (const AxiomViolation& v : report.violations)
      out << to_string(v.kind) << "," << v.points[0] << "," << v.points[1] << ","
          << v.points[2] << "," << real17(v.slack) << "\n";
    print(out.str());
  } else {
    std::ostringstream out;
    out << "identity: " << (report.d1_ok ? "pass" : "FAIL")
        << "\nsymmetry: " << (report.d2_ok ? "pass" : "FAIL")
        << "\nscaled triangle: " << (report.d3_ok ? "pass" : "FAIL") << "\npairs checked: "
        << report.pairs_checked << "\ntriples checked: " << report.triples_checked << "\n";
    for (const AxiomViolation& v : report.violations) {
      out << "violation " << to_string(v.kind) << " (" << v.points[0];
      if (!v.points[1].empty()) out << ", " << v.points[1];
      if (!v.points[2].empty()) out << ", " << v.points[2];
      out << "): lhs " << vec_text(v.lhs) << " rhs " << vec_text(v.rhs) << " slack "
          << human_real(v.slack) << "\n";
    }
    if (report.violations_truncated) out << "(violation list truncated)\n";
    if (args.audit) {
      for (const TripleCheck& c : report.audit)
        out << "check (" << c.points[0] << ", " << c.points[1] << ", " << c.points[2]
            << "): lhs " << vec_text(c.lhs) << " rhs " << vec_text(c.rhs)
            << " tol consumed " << human_real(c.tol_consumed) << " "
            << (c.passed ? "pass" : "FAIL") << "\n";
    }
    out << (report.ok() ? "all axioms hold\n" : "axioms violated\n");
    print(out.str());
  }
  return report.ok() ? 0 : 1;
}

// ----------------------------------------------------- classify / min-eta

std::string table_text(const RealTable& table) {
  std::size_t width = 1;
  std::vector<std::string> cells(table.size() * table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    width = std::max(width, table.labels[i].size());
    for (std::size_t j = 0; j < table.size(); ++j) {
      cells[i * table.size() + j] = human_real(table.at(i, j));
      width = std::max(width, cells[i * table.size() + j].size());
    }
  }
  std::ostringstream out;
  auto pad = [&](const std::string& s) {
    out << s << std::string(width - s.size() + 2, ' ');
  };
  pad("");
  for (const std::string& l : table.labels) pad(l);
  out << "\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    pad(table.labels[i]);
    for (std::size_t j = 0; j < table.size(); ++j) pad(cells[i * table.size() + j]);
    out << "\n";
  }
  return out.str();
}

std::string table_csv(const RealTable& table) {
  std::ostringstream out;
  out << "label";
  for (const std::string& l : table.labels) out << "," << l;
  out << "\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.labels[i];
    for (std::size_t j = 0; j < table.size(); ++j) out << "," << real17(table.at(i, j));
    out << "\n";
  }
  return out.str();
}

struct TableArgs {
  std::string source;
  FixtureParams params;
  Format format = Format::human;
};

const FiniteSpace& require_finite(const Source& src, const char* verb) {
  if (!src.finite())
    throw contract_error(std::string(verb) + " needs a finite space; interval fixtures "
                                             "have no distance table to scan");
  return src.finite_space();
}

int run_classify(const TableArgs& args) {
  const Source src = resolve_source(args.source, args.params);
  const FiniteSpace& space = require_finite(src, "classify");
  const RealTable derived = space.derived_table();
  const Classification c = classify(derived);
  const RealTable eta_min = minimal_eta(derived);

  if (args.format == Format::json) {
    nlohmann::json j = {{"classification", classification_json(c, derived.labels)},
                        {"minimal_eta", real_table_json(eta_min)}};
    print(dump_json(j));
  } else if (args.format == Format::csv) {
    std::ostringstream out;
    out << "is_metric,type_constant,witness_x,witness_y,witness_z,witness_lhs,witness_rhs\n";
    if (c.is_metric) {
      out << "true," << real17(c.type_constant) << ",,,,,\n";
    } else {
      out << "false," << real17(c.type_constant) << "," << derived.labels[c.witness[0]]
          << "," << derived.labels[c.witness[1]] << "," << derived.labels[c.witness[2]]
          << "," << real17(c.witness_lhs) << "," << real17(c.witness_rhs) << "\n";
    }
    print(out.str());
  } else {
    std::ostringstream out;
    if (c.is_metric) {
      out << "metric\n";
    } else {
      out << "not a metric; metric-type with L = " << human_real(c.type_constant)
          << "\nwitness (" << derived.labels[c.witness[0]] << ", "
          << derived.labels[c.witness[1]] << ", " << derived.labels[c.witness[2]]
          << "): " << human_real(c.witness_lhs) << " > " << human_real(c.witness_rhs)
          << "\n";
    }
    out << "minimal scale table:\n" << table_text(eta_min);
    print(out.str());
  }
  return 0;
}

int run_min_eta(const TableArgs& args) {
  const Source src = resolve_source(args.source, args.params);
  const FiniteSpace& space = require_finite(src, "min-eta");
  const RealTable eta_min = minimal_eta(space.derived_table());
  if (args.format == Format::json)
    print(dump_json(real_table_json(eta_min)));
  else if (args.format == Format::csv)
    print(table_csv(eta_min));
  else
    print(table_text(eta_min));
  return 0;
}

// ------------------------------------------------------------------ solve

struct SolveArgs {
  std::string source;
  FixtureParams params;
  std::string scheme = "banach";
  std::optional<std::string> map_spec;
  std::optional<std::string> x0;
  std::size_t power = 2;
  double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
  std::optional<double> tol;
  std::size_t max_iter = 10000;
  std::size_t tail_window = 16;
  std::size_t samples = 64;
  std::uint64_t seed = 1;
  Format format = Format::human;
};

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return 0;
    case SolveStatus::precondition_failed: return 3;
    case SolveStatus::max_iter:
    case SolveStatus::cycle_detected: return 4;
  }
  return 4;
}

template <typename P>
void print_solve_report(const SolveReport<P>& report,
                        const std::function<std::string(const P&)>& label, Format format) {
  if (format == Format::json) {
    std::function<nlohmann::json(const P&)> point;
    if constexpr (std::is_same_v<P, double>)
      point = [](const double& x) { return json_real(x); };
    else
      point = [&](const P& x) { return nlohmann::json(label(x)); };
    print(dump_json(solve_report_json(report, point)));
    return;
  }
  std::ostringstream out;
  if (format == Format::csv) {
    out << "key,value\n";
    out << "status," << to_string(report.status) << "\n";
    out << "fixed_point," << (report.fixed_point ? label(*report.fixed_point) : "") << "\n";
    out << "residual," << real17(report.residual) << "\n";
    out << "iterations," << report.iterations << "\n";
    out << "stop_reason," << to_string(report.trace.stop) << "\n";
    for (const auto& [name, check] : report.preconditions)
      out << name << "," << to_string(check.status) << "\n";
  } else {
    out << "status: " << to_string(report.status) << "\n";
    out << "fixed point: " << (report.fixed_point ? label(*report.fixed_point) : "none")
        << "\n";
    out << "residual: " << human_real(report.residual) << "\n";
    out << "iterations: " << report.iterations << "\n";
    out << "stop reason: " << to_string(report.trace.stop) << "\n";
    out << "preconditions:\n";
    for (const auto& [name, check] : report.preconditions) {
      out << "  " << name << ": " << to_string(check.status) << " (measured "
          << human_real(check.measured) << ", bound " << human_real(check.bound) << ")";
      if (!check.note.empty()) out << " " << check.note;
      out << "\n";
    }
  }
  print(out.str());
}

template <EtaSpace S>
int solve_on(const S& space, const SelfMap<typename S::point_type>& map,
             const typename S::point_type& x0, const SolveArgs& args) {
  using P = typename S::point_type;
  SolveConfig cfg;
  cfg.tol = args.tol.value_or(1e-10);
  cfg.max_iter = args.max_iter;
  cfg.tail_window = args.tail_window;
  cfg.plan.count = args.samples;
  cfg.plan.seed = args.seed;

  SolveReport<P> report;
  if (args.scheme == "banach") {
    report = solve_banach(space, map, x0, cfg);
  } else if (args.scheme == "power") {
    report = solve_banach_iterate_power(space, map, args.power, x0, cfg);
  } else if (args.scheme == "hardy-rogers") {
    const auto coeffs = HardyRogersCoefficients<P>::constants(args.alpha, args.beta,
                                                              args.gamma, args.delta);
    report = solve_hardy_rogers(space, map, coeffs, x0, cfg);
  } else if (args.scheme == "strict") {
    if constexpr (S::finite_domain) {
      report = solve_strict_compact(space, map, x0);
    } else {
      throw contract_error("the strict scheme needs a finite space");
    }
  } else {
    throw lookup_error("unknown scheme '" + args.scheme +
                       "'; valid: banach, power, strict, hardy-rogers");
  }
  auto shared = std::make_shared<const S>(space);
  print_solve_report<P>(
      report, [shared](const P& p) { return shared->label(p); }, args.format);
  return exit_code(report.status);
}

int run_solve(const SolveArgs& args) {
  const Source src = resolve_source(args.source, args.params);
  if (src.finite()) {
    const FiniteSpace& space = src.finite_space();
    if (!args.map_spec)
      throw lookup_error("finite spaces need --map pointing at a map file");
    const SelfMap<std::size_t> map = load_map_file(*args.map_spec, space);
    if (!args.x0) throw lookup_error("finite spaces need --x0 with a point label");
    return solve_on(space, map, resolve_finite_point(space, *args.x0), args);
  }
  const IntervalSpace& space = src.fix->interval_space();
  SelfMap<double> map = args.map_spec ? make_interval_map(*args.map_spec)
                                      : src.fix->interval_map.value();
  double x0;
  if (args.x0)
    x0 = resolve_interval_point(space, *args.x0);
  else if (src.fix->default_x0)
    x0 = *src.fix->default_x0;
  else
    throw lookup_error("this source has no default start; pass --x0");
  return solve_on(space, map, x0, args);
}

// ------------------------------------------------------------------ trace

struct TraceArgs {
  std::string source;
  FixtureParams params;
  std::optional<std::string> map_spec;
  std::optional<std::string> x0;
  std::optional<std::string> seq_path;
  std::optional<std::string> limit;
  std::size_t window = kDefaultCauchyWindow;
  std::optional<double> tol;
  std::size_t max_iter = 10000;
  std::size_t tail_window = 16;
  std::size_t samples = 64;
  std::uint64_t seed = 1;
  Format format = Format::human;
};

template <EtaSpace S>
int trace_orbit(const S& space, const SelfMap<typename S::point_type>& map,
                const typename S::point_type& x0, const TraceArgs& args) {
  using P = typename S::point_type;
  const OrbitTrace<P> trace =
      picard_orbit(space, map, x0, args.max_iter, args.tol.value_or(1e-10));

  SamplingPlan plan{args.samples, args.seed};
  std::optional<double> k_hat;
  try {
    const auto est = estimate_contraction(space, map, plan);
    if (est.k_hat < 1.0) k_hat = est.k_hat;
  } catch (const estimation_error&) {
    // no usable pair: the partial-sum column stays empty
  }

  std::vector<double> sums;  // S_1 .. S_{m-1} for witness m = steps
  if (k_hat && trace.steps() >= 1) sums = partial_sums(trace, *k_hat, trace.steps());

  auto point_text = [&](const P& p) {
    if constexpr (S::finite_domain)
      return space.label(p);
    else
      return real17(p);
  };
  auto window_eta_max = [&](std::size_t n) {
    const std::size_t start = n + 1 >= args.tail_window ? n + 1 - args.tail_window : 0;
    double best = 0.0;
    for (std::size_t i = start; i <= n; ++i)
      for (std::size_t j = start; j <= n; ++j)
        best = std::max(best, space.eta(trace.iterates[i], trace.iterates[j]));
    return best;
  };

  if (args.format == Format::json) {
    nlohmann::json iterates = nlohmann::json::array();
    for (const P& p : trace.iterates) iterates.push_back(point_text(p));
    nlohmann::json steps = nlohmann::json::array();
    for (double d : trace.step_distances) steps.push_back(json_real(d));
    nlohmann::json partial = nlohmann::json::array();
    if (k_hat) {
      partial.push_back(0.0);
      for (double s : sums) partial.push_back(json_real(s));
    }
    print(dump_json({{"iterates", iterates},
                     {"step_distances", steps},
                     {"partial_sums", partial},
                     {"stop_reason", to_string(trace.stop)}}));
    return 0;
  }

  std::ostringstream out;
  out << "n,x,step_distance,eta_tail_max,partial_sum\n";
  for (std::size_t n = 0; n < trace.steps(); ++n) {
    out << n << "," << point_text(trace.iterates[n]) << ","
        << real17(trace.step_distances[n]) << "," << real17(window_eta_max(n)) << ",";
    if (k_hat)
      out << real17(n == 0 ? 0.0 : sums[n - 1]);
    out << "\n";
  }
  print(out.str());
  return 0;
}

template <EtaSpace S>
int trace_sequence(const S& space, const std::vector<typename S::point_type>& points,
                   const typename S::point_type& limit, const TraceArgs& args) {
  using P = typename S::point_type;
  SequencePrefix<P> seq{points, *args.seq_path};
  if (seq.points.size() < 2)
    throw contract_error("sequence files need at least two points");

  std::vector<double> to_limit(seq.points.size());
  for (std::size_t n = 0; n < seq.points.size(); ++n)
    to_limit[n] = space.derived(seq.points[n], limit);

  std::vector<std::optional<double>> sup(seq.points.size());
  if (seq.points.size() >= args.window) {
    const ConvergenceVerdict cauchy =
        is_cauchy_prefix(space, seq, default_threshold_schedule(), args.window);
    for (const auto& [n, value] : cauchy.trail) sup[n] = value;
  }

  if (args.format == Format::json) {
    const ConvergenceVerdict verdict = is_convergent(space, seq, limit);
    nlohmann::json j = {{"to_limit", verdict_json(verdict)}};
    if (seq.points.size() >= args.window)
      j["cauchy"] =
          verdict_json(is_cauchy_prefix(space, seq, default_threshold_schedule(), args.window));
    print(dump_json(j));
    return 0;
  }

  std::ostringstream out;
  out << "n,distance_to_limit,pairwise_sup\n";
  for (std::size_t n = 0; n < seq.points.size(); ++n) {
    out << n << "," << real17(to_limit[n]) << ",";
    if (sup[n]) out << real17(*sup[n]);
    out << "\n";
  }
  print(out.str());
  return 0;
}

int run_trace(const TraceArgs& args) {
  const Source src = resolve_source(args.source, args.params);
  if (args.seq_path) {
    if (!args.limit) throw lookup_error("--seq needs --limit");
    const std::vector<std::string> labels = load_sequence_file(*args.seq_path);
    if (src.finite()) {
      const FiniteSpace& space = src.finite_space();
      std::vector<std::size_t> points;
      points.reserve(labels.size());
      for (const std::string& l : labels) points.push_back(resolve_finite_point(space, l));
      return trace_sequence(space, points, resolve_finite_point(space, *args.limit), args);
    }
    const IntervalSpace& space = src.fix->interval_space();
    std::vector<double> points;
    points.reserve(labels.size());
    for (const std::string& l : labels) points.push_back(resolve_interval_point(space, l));
    return trace_sequence(space, points, resolve_interval_point(space, *args.limit), args);
  }

  if (src.finite()) {
    const FiniteSpace& space = src.finite_space();
    if (!args.map_spec)
      throw lookup_error("finite spaces need --map pointing at a map file");
    if (!args.x0) throw lookup_error("finite spaces need --x0 with a point label");
    return trace_orbit(space, load_map_file(*args.map_spec, space),
                       resolve_finite_point(space, *args.x0), args);
  }
  const IntervalSpace& space = src.fix->interval_space();
  SelfMap<double> map = args.map_spec ? make_interval_map(*args.map_spec)
                                      : src.fix->interval_map.value();
  double x0;
  if (args.x0)
    x0 = resolve_interval_point(space, *args.x0);
  else if (src.fix->default_x0)
    x0 = *src.fix->default_x0;
  else
    throw lookup_error("this source has no default start; pass --x0");
  return trace_orbit(space, map, x0, args);
}

// --------------------------------------------------------- export-fixture

struct ExportArgs {
  std::string name;
  FixtureParams params;
  std::optional<std::string> out_path;
};

int run_export(const ExportArgs& args) {
  const Fixture fix = fixture(args.name, args.params);
  if (!fix.finite())
    throw contract_error("fixture '" + args.name +
                         "' is an interval space; only finite fixtures export to tables");
  if (args.out_path) {
    std::ofstream out(*args.out_path);
    if (!out) throw lookup_error("cannot open '" + *args.out_path + "' for writing");
    write_distance_table(out, fix.finite_space());
  } else {
    write_distance_table(std::cout, fix.finite_space());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eta-cone metric spaces: verify axioms, classify tables, run fixed-point solvers"};
  app.require_subcommand(1);

  const std::map<std::string, Format> format_names{
      {"human", Format::human}, {"json", Format::json}, {"csv", Format::csv}};

  VerifyArgs verify_args;
  TableArgs classify_args, mineta_args;
  SolveArgs solve_args;
  TraceArgs trace_args;
  ExportArgs export_args;

  auto add_fixture_params = [](CLI::App* cmd, FixtureParams& p, bool with_alpha) {
    if (with_alpha)
      cmd->add_option("--alpha", p.alpha, "second-coordinate scale of the three-point fixtures");
    cmd->add_option("--truncation", p.truncation, "largest natural in nat_infinity");
    cmd->add_option("--grid-nodes", p.grid_nodes, "grid resolution of function_space");
  };
  auto add_format = [&](CLI::App* cmd, Format& f) {
    cmd->add_option("--format", f, "output format")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
  };

  CLI::App* verify = app.add_subcommand("verify", "check the three distance axioms");
  verify->add_option("source", verify_args.source, "fixture name or table path")->required();
  add_fixture_params(verify, verify_args.params, true);
  verify->add_option("--tol", verify_args.tol, "comparison tolerance (default 1e-9)");
  verify->add_option("--samples", verify_args.samples, "sample count on interval spaces");
  verify->add_option("--seed", verify_args.seed, "sampling seed");
  verify->add_flag("--audit", verify_args.audit, "record every triangle comparison");
  add_format(verify, verify_args.format);

  CLI::App* classify_cmd = app.add_subcommand("classify", "metric or metric-type with constant");
  classify_cmd->add_option("source", classify_args.source, "fixture name or table path")->required();
  add_fixture_params(classify_cmd, classify_args.params, true);
  add_format(classify_cmd, classify_args.format);

  CLI::App* mineta = app.add_subcommand("min-eta", "least scale table satisfying the triangle");
  mineta->add_option("source", mineta_args.source, "fixture name or table path")->required();
  add_fixture_params(mineta, mineta_args.params, true);
  add_format(mineta, mineta_args.format);

  CLI::App* solve = app.add_subcommand("solve", "run a fixed-point scheme");
  solve->add_option("source", solve_args.source, "fixture name or table path")->required();
  add_fixture_params(solve, solve_args.params, false);
  solve->add_option("--scheme", solve_args.scheme, "banach | power | strict | hardy-rogers");
  solve->add_option("--map", solve_args.map_spec,
                    "interval builtin (half, square, affine A B, const C) or map file");
  solve->add_option("--x0", solve_args.x0, "start point (label or number)");
  solve->add_option("--power", solve_args.power, "composition count for the power scheme");
  solve->add_option("--alpha", solve_args.alpha, "first combined-contraction coefficient");
  solve->add_option("--beta", solve_args.beta, "second combined-contraction coefficient");
  solve->add_option("--gamma", solve_args.gamma, "third combined-contraction coefficient");
  solve->add_option("--delta", solve_args.delta, "fourth combined-contraction coefficient");
  solve->add_option("--tol", solve_args.tol, "residual tolerance (default 1e-10)");
  solve->add_option("--max-iter", solve_args.max_iter, "iteration budget");
  solve->add_option("--tail-window", solve_args.tail_window, "eta tail window");
  solve->add_option("--samples", solve_args.samples, "sample count on interval spaces");
  solve->add_option("--seed", solve_args.seed, "sampling seed");
  add_format(solve, solve_args.format);

  CLI::App* trace = app.add_subcommand("trace", "emit an orbit or sequence trail as CSV");
  trace->add_option("source", trace_args.source, "fixture name or table path")->required();
  add_fixture_params(trace, trace_args.params, false);
  trace->add_option("--map", trace_args.map_spec, "map builtin or map file");
  trace->add_option("--x0", trace_args.x0, "orbit start");
  trace->add_option("--seq", trace_args.seq_path, "sequence file (one label per line)");
  trace->add_option("--limit", trace_args.limit, "limit point for --seq mode");
  trace->add_option("--window", trace_args.window, "pairwise sup window for --seq mode");
  trace->add_option("--tol", trace_args.tol, "orbit stop tolerance (default 1e-10)");
  trace->add_option("--max-iter", trace_args.max_iter, "iteration budget");
  trace->add_option("--tail-window", trace_args.tail_window, "eta tail window");
  trace->add_option("--samples", trace_args.samples, "sample count on interval spaces");
  trace->add_option("--seed", trace_args.seed, "sampling seed");
  add_format(trace, trace_args.format);

  CLI::App* exp = app.add_subcommand("export-fixture", "write a finite fixture as a table");
  exp->add_option("name", export_args.name, "fixture name")->required();
  add_fixture_params(exp, export_args.params, true);
  exp->add_option("--out", export_args.out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) return run_verify(verify_args);
    if (classify_cmd->parsed()) return run_classify(classify_args);
    if (mineta->parsed()) return run_min_eta(mineta_args);
    if (solve->parsed()) return run_solve(solve_args);
    if (trace->parsed()) return run_trace(trace_args);
    if (exp->parsed()) return run_export(export_args);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lookup_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const contract_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    // data, map-domain, estimation, infeasible: bad inputs, not bad usage
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
