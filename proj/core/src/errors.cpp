#include "isolab/errors.hpp"

namespace isolab {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kPrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::kFrobeniusLiftFailure: return "FrobeniusLiftFailure";
    case ErrorCode::kInsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::kNonInvertible: return "NonInvertible";
    case ErrorCode::kResidueFieldTooSmall: return "ResidueFieldTooSmall";
    case ErrorCode::kFieldSpecMismatch: return "FieldSpecMismatch";
    case ErrorCode::kNotNilpotent: return "NotNilpotent";
    case ErrorCode::kSlopeOutOfRange: return "SlopeOutOfRange";
    case ErrorCode::kSlopeNotStrictlyNegative: return "SlopeNotStrictlyNegative";
    case ErrorCode::kInternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorCode::kDegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::kSplitUnavailable: return "SplitUnavailable";
    case ErrorCode::kUnsupportedType: return "UnsupportedType";
    case ErrorCode::kInvalidRootDatum: return "InvalidRootDatum";
    case ErrorCode::kParameterMismatch: return "ParameterMismatch";
    case ErrorCode::kNonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::kSequenceTooShort: return "SequenceTooShort";
    case ErrorCode::kDegreeBoundTooSmall: return "DegreeBoundTooSmall";
    case ErrorCode::kSlopeOrderViolated: return "SlopeOrderViolated";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kMalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

}  // namespace isolab
