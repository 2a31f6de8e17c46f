#include "snaplab/error.hpp"

namespace snaplab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SymbolUndefined: return "SymbolUndefined";
    case ErrorCode::InvalidScale: return "InvalidScale";
    case ErrorCode::InvalidTime: return "InvalidTime";
    case ErrorCode::InvalidTimes: return "InvalidTimes";
    case ErrorCode::IncompatibleData: return "IncompatibleData";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::InvalidCoefficient: return "InvalidCoefficient";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::Unclassifiable: return "Unclassifiable";
    case ErrorCode::ParamsMismatch: return "ParamsMismatch";
    case ErrorCode::RequiresOddDimension: return "RequiresOddDimension";
    case ErrorCode::RequiresZonal: return "RequiresZonal";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace snaplab
