#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace etametric {

/// Base class for every error the library throws.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition: mismatched dimensions, empty
/// sets, nonpositive margins, invalid threshold schedules, and the like.
class contract_error : public error {
 public:
  using error::error;
};

/// Input data is unusable: non-finite distances, scale values below 1,
/// tables that are not symmetric where symmetry is required.
class data_error : public error {
 public:
  using error::error;
};

/// Observed behaviour contradicts coefficients the caller declared to hold.
class inconsistent_data_error : public data_error {
 public:
  using data_error::data_error;
};

/// A self map produced a point outside the space it was declared on.
class map_domain_error : public error {
 public:
  using error::error;
};

/// A sampling-based estimate had no usable samples.
class estimation_error : public error {
 public:
  using error::error;
};

/// A requested quantity does not exist for the given data, e.g. a scale
/// factor for a pair whose every intermediate sum is zero.
class infeasible_error : public error {
 public:
  using error::error;
};

/// An unknown name was requested from a catalog.
class lookup_error : public error {
 public:
  using error::error;
};

/// A text input could not be parsed. Carries the 1-based line number.
class parse_error : public data_error {
 public:
  parse_error(std::size_t line, const std::string& message)
      : data_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace etametric
