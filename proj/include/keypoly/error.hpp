#pragma once

#include <stdexcept>
#include <string>

namespace keypoly {

enum class ErrorKind {
  NonUnitValue,
  NonMonicDivisor,
  ZeroPolynomial,
  NotIrreducible,
  UnsupportedResidueField,
  NoVanishingFactor,
  NonPositiveValueOfX,
  NotStabilized,
  GapConditionUnmet,
  NoDefectiveProbe,
  ParseError,
  UnknownSymbol,
  InvalidInput,
  PrecisionExhausted,
  BudgetExhausted,
};

const char* error_name(ErrorKind kind);

/// Every failure raised by the library. Resource failures (precision, budget)
/// are distinguished from domain failures so callers can map exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }
  bool is_resource() const;

 private:
  ErrorKind kind_;
};

}  // namespace keypoly
