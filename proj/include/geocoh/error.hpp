#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geocoh {

enum class ErrorKind {
  NotSquare,
  BadDimension,
  NotHermitian,
  NotPositive,
  TraceNotOne,
  NegativeEigenvalue,
  DimensionMismatch,
  OrderingViolation,
  NotQubit,
  NotPure,
  BadParameter,
  BadRank,
  NotNormalized,
  NegativeEntry,
  NonFinite,
};

std::string_view to_string(ErrorKind kind);

/// Library exception. what() starts with the kind name, e.g. "NotPositive: ...".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace geocoh
