#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace parweigh {

enum class ErrorCode {
  kContradictoryOutcome,
  kInfeasibleOutcome,
  kIllegalWeighing,
  kRangeExceeded,
  kNeedsSolver,
  kUnresolvableState,
  kCapacityExceeded,
  kTwoCoinException,
  kNotSolvable,
  kInstanceTooLarge,
  kParseError,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// Every recoverable failure in the library is a PuzzleError. `reason` is a
// short machine-readable tag (e.g. "pan-size-mismatch") where one applies.
class PuzzleError : public std::runtime_error {
 public:
  PuzzleError(ErrorCode code, const std::string& message, std::string reason = {})
      : std::runtime_error(message), code_(code), reason_(std::move(reason)) {}

  ErrorCode code() const { return code_; }
  const std::string& reason() const { return reason_; }

 private:
  ErrorCode code_;
  std::string reason_;
};

}  // namespace parweigh
