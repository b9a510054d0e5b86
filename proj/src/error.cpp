#include "geocoh/error.hpp"

namespace geocoh {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::OrderingViolation: return "OrderingViolation";
    case ErrorKind::NotQubit: return "NotQubit";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace geocoh
