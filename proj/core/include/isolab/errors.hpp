#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace isolab {

// Every failure a module can report. The CLI maps each code to exactly one
// name and exit status, so additions here must be mirrored in error_name().
enum class ErrorCode {
  kDivisionByZero,
  kPrecisionExhausted,
  kFrobeniusLiftFailure,
  kInsufficientPrecision,
  kNonInvertible,
  kResidueFieldTooSmall,
  kFieldSpecMismatch,
  kNotNilpotent,
  kSlopeOutOfRange,
  kSlopeNotStrictlyNegative,
  kInternalInvariantViolation,
  kDegreeTooLarge,
  kSplitUnavailable,
  kUnsupportedType,
  kInvalidRootDatum,
  kParameterMismatch,
  kNonzeroConstantTerm,
  kSequenceTooShort,
  kDegreeBoundTooSmall,
  kSlopeOrderViolated,
  kPreconditionViolated,
  kMalformedInput,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::json witness = nullptr)
      : std::runtime_error(message),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const { return code_; }
  std::string_view name() const { return error_name(code_); }
  const nlohmann::json& witness() const { return witness_; }

 private:
  ErrorCode code_;
  nlohmann::json witness_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message,
                              nlohmann::json witness = nullptr) {
  throw Error(code, message, std::move(witness));
}

}  // namespace isolab
