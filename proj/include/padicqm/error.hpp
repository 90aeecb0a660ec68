#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padicqm {

enum class ErrorCode {
  InvalidPrime,
  PrecisionTooLow,
  ContextMismatch,
  PrecisionExhausted,
  DivisionByZero,
  ZeroInput,
  NotASquare,
  MuIsSquare,
  RequiresOddP,
  SearchBoundExceeded,
  DimensionMismatch,
  NotBlockFinite,
  NotAdjointable,
  NotSelfAdjoint,
  NotTraceClass,
  InvalidCertificate,
  TraceNotOne,
  TraceNotZero,
  SumNotOne,
  SumNotIdentity,
  EmptyList,
  UnsupportedForP2,
  OutsideWindow,
  TailDominates,
  TailNotBounded,
  DegenerateNormalizer,
  ParseError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace padicqm
