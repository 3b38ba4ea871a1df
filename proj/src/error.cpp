#include "qmock/error.hpp"

namespace qmock {

const char* kindName(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroSeries: return "ZeroSeries";
    case ErrorKind::BeyondTruncation: return "BeyondTruncation";
    case ErrorKind::NonIntegralUnitPower: return "NonIntegralUnitPower";
    case ErrorKind::NoStabilization: return "NoStabilization";
    case ErrorKind::PolePochhammer: return "PolePochhammer";
    case ErrorKind::FormalDivergence: return "FormalDivergence";
    case ErrorKind::DivergentFamily: return "DivergentFamily";
    case ErrorKind::PoleAppellLerch: return "PoleAppellLerch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::EvaluationError: return "EvaluationError";
    case ErrorKind::CesaroNotPermitted: return "CesaroNotPermitted";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::ZeroFactor: return "ZeroFactor";
    case ErrorKind::RootClassMismatch: return "RootClassMismatch";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::RegistryError: return "RegistryError";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Error";
}

}  // namespace qmock
