#pragma once

#include <stdexcept>
#include <string>

namespace fracrh {

enum class ErrorCode {
  InputError = 1,
  DomainError,
  DegenerateLeadingCoefficient,
  ConvergenceFailure,
  DimensionMismatch,
  Unsupported,
  NoBracket,
  ParseError,
  InternalError,
};

// All library failures are reported through this type; the C API maps
// code() onto its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fracrh
