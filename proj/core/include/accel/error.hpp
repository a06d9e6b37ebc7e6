#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace accel {

enum class ErrorCode {
  kUnsupportedCombination,
  kInvalidClass,
  kDimensionMismatch,
  kDivergenceDetected,
  kOutOfValidityRange,
  kNotStable,
  kDegenerateCertificate,
  kInfeasibleCertificate,
  kNotInClass,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace accel
