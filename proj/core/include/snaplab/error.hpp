#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace snaplab {

enum class ErrorCode {
  DimensionMismatch,
  SymbolUndefined,
  InvalidScale,
  InvalidTime,
  InvalidTimes,
  IncompatibleData,
  PrecisionExhausted,
  InvalidCoefficient,
  NotCoprime,
  Unclassifiable,
  ParamsMismatch,
  RequiresOddDimension,
  RequiresZonal,
  InvalidArgument,
  ParseError,
  UnknownSuite,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every domain failure in the library is reported through this type.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

}  // namespace snaplab
