#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fifs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (config, FZY1, metric spec, address, options).
struct ParseError : Error {
  explicit ParseError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line(line) {}
  int line;
};

// Geometry/frame violations: map image escapes the grid, mismatched grids
// or level scales, support outside a subgrid, empty-vs-nonempty Hausdorff.
struct DomainError : Error {
  using Error::Error;
};

// iterate_to_fixpoint ran out of iterations; carries the distance trace.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, std::vector<double> t)
      : Error(msg), trace(std::move(t)) {}
  std::vector<double> trace;
};

// Enumeration would exceed the configured budget (k^depth too large).
struct BudgetError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace fifs
