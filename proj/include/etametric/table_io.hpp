#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spaces.hpp"

namespace etametric {

namespace detail {

inline double parse_real(const std::string& token, std::size_t line,
                         const char* what) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + token.size() || token.empty())
    throw parse_error(line, std::string("expected a ") + what + ", got '" + token + "'");
  return v;
}

inline std::string format_table_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// Line-oriented distance table:
///   points: p1 p2 ... pn
///   d a b v1 [v2 ... vm]     one entry per unordered pair, both orders count
///   eta a b s                optional; unset cells mirror their transpose,
///                            then default to 1
/// '#' starts a comment; blank lines are skipped. The value dimension m is
/// fixed by the first d line; the ordering space is the m-dimensional
/// coordinatewise cone under the max norm. Diagonal d entries are optional
/// and default to the zero vector.
inline FiniteSpace parse_distance_table(std::istream& in, const std::string& source) {
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> index;
  std::map<std::pair<std::size_t, std::size_t>, Vec> d_cells;
  std::map<std::pair<std::size_t, std::size_t>, double> eta_cells;
  std::optional<std::size_t> dim;

  auto resolve = [&](const std::string& token, std::size_t line) {
    auto it = index.find(token);
    if (it == index.end())
      throw parse_error(line, "unknown point '" + token + "'");
    return it->second;
  };

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::string head;
    if (!(tokens >> head)) continue;

    if (head == "points:") {
      if (!labels.empty()) throw parse_error(line, "second points: header");
      std::string label;
      while (tokens >> label) {
        if (!index.emplace(label, labels.size()).second)
          throw parse_error(line, "duplicate point '" + label + "'");
        labels.push_back(label);
      }
      if (labels.empty()) throw parse_error(line, "points: header names no points");
      continue;
    }
    if (labels.empty())
      throw parse_error(line, "expected the points: header before '" + head + "'");

    if (head == "d") {
      std::string a, b;
      if (!(tokens >> a >> b))
        throw parse_error(line, "d entry needs two point labels and values");
      const std::size_t i = resolve(a, line);
      const std::size_t j = resolve(b, line);
      std::vector<double> coords;
      std::string token;
      while (tokens >> token)
        coords.push_back(detail::parse_real(token, line, "coordinate"));
      if (coords.empty()) throw parse_error(line, "d entry has no coordinates");
      if (!dim) dim = coords.size();
      if (coords.size() != *dim)
        throw parse_error(line, "expected " + std::to_string(*dim) +
                                    " coordinates, got " + std::to_string(coords.size()));
      const auto key = i <= j ? std::make_pair(i, j) : std::make_pair(j, i);
      if (!d_cells.emplace(key, Vec(std::move(coords))).second)
        throw parse_error(line, "duplicate distance entry for (" + a + ", " + b + ")");
      continue;
    }

    if (head == "eta") {
      std::string a, b, value;
      if (!(tokens >> a >> b >> value))
        throw parse_error(line, "eta entry needs two point labels and a value");
      std::string extra;
      if (tokens >> extra)
        throw parse_error(line, "eta entry has trailing token '" + extra + "'");
      const std::size_t i = resolve(a, line);
      const std::size_t j = resolve(b, line);
      if (!eta_cells.emplace(std::make_pair(i, j),
                             detail::parse_real(value, line, "scale value"))
               .second)
        throw parse_error(line, "duplicate scale entry for (" + a + ", " + b + ")");
      continue;
    }

    throw parse_error(line, "unknown directive '" + head + "'");
  }

  if (labels.empty())
    throw parse_error(line == 0 ? 1 : line, "missing points: header in " + source);
  const std::size_t n = labels.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!d_cells.count({i, j}))
        throw parse_error(line, "missing distance entry for (" + labels[i] + ", " +
                                    labels[j] + ")");
    }
  }

  const std::size_t m = dim.value_or(1);
  auto dist = [&](std::size_t i, std::size_t j) {
    if (i == j) {
      auto it = d_cells.find({i, j});
      return it != d_cells.end() ? it->second : Vec::zero(m);
    }
    return d_cells.at(i <= j ? std::make_pair(i, j) : std::make_pair(j, i));
  };
  auto eta = [&](std::size_t i, std::size_t j) {
    auto it = eta_cells.find({i, j});
    if (it != eta_cells.end()) return it->second;
    it = eta_cells.find({j, i});
    if (it != eta_cells.end()) return it->second;
    return 1.0;
  };
  return FiniteSpace::from_tables(labels, ConeSpace::orthant(m, Norm::max_abs), dist, eta);
}

inline FiniteSpace load_distance_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lookup_error("cannot open distance table '" + path + "'");
  return parse_distance_table(in, path);
}

/// Inverse of parse_distance_table, minimal form: upper-triangle d lines,
/// scale lines only where a cell differs from what mirroring and the
/// default of 1 would reconstruct. Values carry 17 significant digits so
/// the round trip is exact.
inline void write_distance_table(std::ostream& out, const FiniteSpace& space) {
  const std::size_t n = space.size();
  out << "points:";
  for (std::size_t i = 0; i < n; ++i) out << " " << space.label(i);
  out << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out << "d " << space.label(i) << " " << space.label(j);
      const Vec& v = space.distance(i, j);
      for (std::size_t c = 0; c < v.dim(); ++c)
        out << " " << detail::format_table_value(v[c]);
      out << "\n";
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double diag = space.eta(i, i);
    if (diag != 1.0)
      out << "eta " << space.label(i) << " " << space.label(i) << " "
          << detail::format_table_value(diag) << "\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = space.eta(i, j);
      const double b = space.eta(j, i);
      if (a == b) {
        if (a != 1.0)
          out << "eta " << space.label(i) << " " << space.label(j) << " "
              << detail::format_table_value(a) << "\n";
      } else {
        out << "eta " << space.label(i) << " " << space.label(j) << " "
            << detail::format_table_value(a) << "\n";
        out << "eta " << space.label(j) << " " << space.label(i) << " "
            << detail::format_table_value(b) << "\n";
      }
    }
  }
}

/// Sequence file: one point label per line; '#' comments and blank lines
/// are skipped; extra tokens on a line are an error.
inline std::vector<std::string> parse_sequence_file(std::istream& in,
                                                    const std::string& source) {
  std::vector<std::string> points;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::string label;
    if (!(tokens >> label)) continue;
    std::string extra;
    if (tokens >> extra)
      throw parse_error(line, "expected one point per line, got extra token '" +
                                  extra + "'");
    points.push_back(label);
  }
  if (points.empty())
    throw parse_error(line == 0 ? 1 : line, "no points in sequence file " + source);
  return points;
}

inline std::vector<std::string> load_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lookup_error("cannot open sequence file '" + path + "'");
  return parse_sequence_file(in, path);
}

}  // namespace etametric
