#pragma once

#include <stdexcept>
#include <string>

namespace qmock {

enum class ErrorKind {
  ZeroSeries,
  BeyondTruncation,
  NonIntegralUnitPower,
  NoStabilization,
  PolePochhammer,
  FormalDivergence,
  DivergentFamily,
  PoleAppellLerch,
  SyntaxError,
  ArityError,
  UnboundVariable,
  EvaluationError,
  CesaroNotPermitted,
  PrecisionExhausted,
  ZeroFactor,
  RootClassMismatch,
  UnknownName,
  RegistryError,
  Overflow,
};

const char* kindName(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kindName(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// parse errors carry a 1-based position
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int column)
      : Error(ErrorKind::SyntaxError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace qmock
