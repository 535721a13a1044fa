#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sumprod {

enum class ErrorKind {
  CompositeModulus,
  OutOfRange,
  ZeroInput,
  ModulusMismatch,
  ZeroInSet,
  ZeroDilation,
  ZeroTarget,
  EmptySet,
  LengthMismatch,
  BothZero,
  ZeroFrequency,
  NotAProgression,
  TrivialCharacter,
  BadRange,
  BadDensity,
  DuplicateTargets,
  TooSmall,
  TooLarge,
  BadSize,
  ConfigError,
  ParseError,
  InvariantViolation,
};

constexpr std::string_view to_string(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::CompositeModulus: return "CompositeModulus";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::ModulusMismatch: return "ModulusMismatch";
    case ErrorKind::ZeroInSet: return "ZeroInSet";
    case ErrorKind::ZeroDilation: return "ZeroDilation";
    case ErrorKind::ZeroTarget: return "ZeroTarget";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::ZeroFrequency: return "ZeroFrequency";
    case ErrorKind::NotAProgression: return "NotAProgression";
    case ErrorKind::TrivialCharacter: return "TrivialCharacter";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::BadDensity: return "BadDensity";
    case ErrorKind::DuplicateTargets: return "DuplicateTargets";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadSize: return "BadSize";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sumprod
