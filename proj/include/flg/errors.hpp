#pragma once

#include <stdexcept>
#include <string>

namespace flg {

// Base class for every structured error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Rejection of a case file, carrying the 1-based line and column of the
// offending token so callers can point at the exact spot.
class ParseError : public Error {
 public:
  ParseError(int line_, int column_, std::string message_)
      : Error("parse error at line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ": " + message_),
        line(line_),
        column(column_),
        message(std::move(message_)) {}

  int line;
  int column;
  std::string message;
};

// A factorization met a pivot too small to trust; callers that can tolerate
// rank deficiency should fall back to the pseudoinverse route.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// An iterative decomposition failed to converge.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// Operands with incompatible shapes.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A matrix row/column id has no generator/load classification.
class MissingKind : public Error {
 public:
  using Error::Error;
};

// A check was invoked on input that does not satisfy its stated premise.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

// Numerically invalid operand (NaN or infinite entries).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace flg
