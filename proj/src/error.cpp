#include <kgon/error.hpp>

namespace kgon {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::DegenerateContour: return "DegenerateContour";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::DegenerateDerivative: return "DegenerateDerivative";
    case ErrorCode::FlatContour: return "FlatContour";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::NoFeasibleK: return "NoFeasibleK";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::MissingFeature: return "MissingFeature";
    case ErrorCode::SingletonCategory: return "SingletonCategory";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateDerivative:
    case ErrorCode::FlatContour:
    case ErrorCode::ZeroNorm:
    case ErrorCode::NoFeasibleK:
    case ErrorCode::RankDeficient:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

}  // namespace kgon
