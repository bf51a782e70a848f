#ifndef CAUCHYCL_ERROR_HPP
#define CAUCHYCL_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace cauchycl {

enum class ErrorCode {
  DuplicatePoint,
  IndexOutOfRange,
  DimensionMismatch,
  NotEnoughPoints,
  InvalidSampleCount,
  InvalidPriors,
  InvalidValue,
  NonpositiveInput,
  NonpositivePower,
  NotUnitVector,
  EmptyGrid,
  LambdaOutOfRange,
  EmptyCandidateList,
  UnknownName,
  ParseError,
  SampleCap,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotEnoughPoints: return "NotEnoughPoints";
    case ErrorCode::InvalidSampleCount: return "InvalidSampleCount";
    case ErrorCode::InvalidPriors: return "InvalidPriors";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::NonpositiveInput: return "NonpositiveInput";
    case ErrorCode::NonpositivePower: return "NonpositivePower";
    case ErrorCode::NotUnitVector: return "NotUnitVector";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::EmptyCandidateList: return "EmptyCandidateList";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SampleCap: return "SampleCap";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `field()` is a JSON-pointer-like
/// path into the offending input when one is known (empty otherwise).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message),
        field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::string field_;
};

}  // namespace cauchycl

#endif  // CAUCHYCL_ERROR_HPP
