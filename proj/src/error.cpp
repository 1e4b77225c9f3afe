#include "keypoly/error.hpp"

namespace keypoly {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonUnitValue: return "NonUnitValue";
    case ErrorKind::NonMonicDivisor: return "NonMonicDivisor";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::UnsupportedResidueField: return "UnsupportedResidueField";
    case ErrorKind::NoVanishingFactor: return "NoVanishingFactor";
    case ErrorKind::NonPositiveValueOfX: return "NonPositiveValueOfX";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::GapConditionUnmet: return "GapConditionUnmet";
    case ErrorKind::NoDefectiveProbe: return "NoDefectiveProbe";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

bool Error::is_resource() const {
  return kind_ == ErrorKind::PrecisionExhausted || kind_ == ErrorKind::BudgetExhausted;
}

}  // namespace keypoly
