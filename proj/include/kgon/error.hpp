#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kgon {

enum class ErrorCode {
  TooFewPoints,
  DegenerateContour,
  BadK,
  WindowTooLarge,
  BadConfig,
  DegenerateDerivative,
  FlatContour,
  ZeroNorm,
  NoFeasibleK,
  RankDeficient,
  TooFewRows,
  MissingFeature,
  SingletonCategory,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// True for failures of the numerics on valid input, as opposed to bad input.
bool is_numeric_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

  /// The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace kgon
