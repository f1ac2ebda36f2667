#pragma once

#include <stdexcept>
#include <string>

namespace fibergate {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violation of a physical precondition (negative rates, mismatched
/// dimensions, loss ratios outside the analytic branch, ...).
class PhysicsError : public Error {
 public:
  using Error::Error;
};

/// Scenario-file syntax or schema problem. Carries the offending line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

/// Numerical solver did not converge.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace fibergate
