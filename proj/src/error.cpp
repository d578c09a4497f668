#include "mvhp/error.hpp"

namespace mvhp {

ErrorCategory category(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::Parse:
    case ErrorCode::MissingHeader:
    case ErrorCode::NonNumericCell:
    case ErrorCode::TooShort:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotSymmetric:
    case ErrorCode::MissingAggregate:
    case ErrorCode::LagTooLarge:
    case ErrorCode::Io:
    case ErrorCode::NegativeSnr:
    case ErrorCode::OutOfInvertibleRange:
      return ErrorCategory::Input;
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::NoConvergence:
    case ErrorCode::DegenerateLeadingCoefficient:
    case ErrorCode::ZeroResidualVariance:
    case ErrorCode::NegativeSnrEigenvalue:
      return ErrorCategory::Numerical;
    case ErrorCode::Internal:
      return ErrorCategory::Internal;
  }
  return ErrorCategory::Internal;
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::MissingHeader: return "MissingHeader";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::MissingAggregate: return "MissingAggregate";
    case ErrorCode::LagTooLarge: return "LagTooLarge";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorCode::NegativeSnr: return "NegativeSnr";
    case ErrorCode::OutOfInvertibleRange: return "OutOfInvertibleRange";
    case ErrorCode::ZeroResidualVariance: return "ZeroResidualVariance";
    case ErrorCode::NegativeSnrEigenvalue: return "NegativeSnrEigenvalue";
    case ErrorCode::Internal: return "InternalError";
  }
  return "Unknown";
}

}  // namespace mvhp
