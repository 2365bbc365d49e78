#pragma once

#include <stdexcept>
#include <string>

namespace rhpdhg {

/// Caller passed arguments that violate an interface contract.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Instance data violates the LP model invariants (bad bounds, NaN, size mismatch).
class InvalidProblemError : public std::runtime_error {
 public:
  explicit InvalidProblemError(const std::string& what) : std::runtime_error(what) {}
};

/// Input file could not be parsed; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// Floating-point state that indicates an algorithmic bug (e.g. the canonical
/// norm turned indefinite). Must not be swallowed.
class NumericalBreakdownError : public std::runtime_error {
 public:
  explicit NumericalBreakdownError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rhpdhg
