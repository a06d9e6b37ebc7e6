#include "accel/error.hpp"

namespace accel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnsupportedCombination:
      return "UnsupportedCombination";
    case ErrorCode::kInvalidClass:
      return "InvalidClass";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kDivergenceDetected:
      return "DivergenceDetected";
    case ErrorCode::kOutOfValidityRange:
      return "OutOfValidityRange";
    case ErrorCode::kNotStable:
      return "NotStable";
    case ErrorCode::kDegenerateCertificate:
      return "DegenerateCertificate";
    case ErrorCode::kInfeasibleCertificate:
      return "InfeasibleCertificate";
    case ErrorCode::kNotInClass:
      return "NotInClass";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace accel
