#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linform {

enum class ErrorCode {
  EmptyCoefficients,
  NonPositiveCoefficient,
  CoefficientCapExceeded,
  EmptyInput,
  DuplicateElements,
  NotCanonical,
  DiameterTooSmall,
  NotBinary,
  NotTernary,
  NotStrictlyIncreasing,
  NotCoprime,
  MissingBaseValue,
  InconsistentKnown,
  NotCertifiedExact,
  InvalidArgument,
  ParseError,
  CapacityExceeded,
  BudgetExceeded,
  Overflow,
  Internal,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyCoefficients: return "EmptyCoefficients";
    case ErrorCode::NonPositiveCoefficient: return "NonPositiveCoefficient";
    case ErrorCode::CoefficientCapExceeded: return "CoefficientCapExceeded";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DuplicateElements: return "DuplicateElements";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::DiameterTooSmall: return "DiameterTooSmall";
    case ErrorCode::NotBinary: return "NotBinary";
    case ErrorCode::NotTernary: return "NotTernary";
    case ErrorCode::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::MissingBaseValue: return "MissingBaseValue";
    case ErrorCode::InconsistentKnown: return "InconsistentKnown";
    case ErrorCode::NotCertifiedExact: return "NotCertifiedExact";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// True for errors caused by resource limits rather than malformed input.
constexpr bool is_resource_error(ErrorCode code) noexcept {
  return code == ErrorCode::CapacityExceeded || code == ErrorCode::BudgetExceeded ||
         code == ErrorCode::Overflow || code == ErrorCode::CoefficientCapExceeded;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace linform
