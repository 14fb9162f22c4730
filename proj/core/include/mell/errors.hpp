#pragma once

#include <stdexcept>
#include <string>

namespace mell {

struct ParseError : std::runtime_error {
  int line, col;
  std::string expected;
  ParseError(int line_, int col_, const std::string& expected_)
      : std::runtime_error("syntax error at " + std::to_string(line_) + ":" + std::to_string(col_) +
                           ": expected " + expected_),
        line(line_), col(col_), expected(expected_) {}
};

enum class TypeErrorKind {
  UnboundVariable,
  NonLinearUsage,
  TypeMismatch,
  ModeViolation,
  NonLocalLinearCapture,
  UnusedLinear,
  AmbiguousType,
  NameClash,
  ContextOverlap,
};

struct TypeError : std::runtime_error {
  TypeErrorKind kind;
  TypeError(TypeErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct SubstError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FuelExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace mell
