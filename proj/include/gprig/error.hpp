#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gprig {

/// Failure categories raised across the library. The CLI maps them to exit codes.
enum class ErrorKind {
  InvalidArgument,   // non-finite input, out-of-range parameter, malformed config
  Regime,            // coupling outside the regime an operation is defined for
  NonConvergence,
  SingularJacobian,
  NoCrossing,
  ContinuationStall,
  StepTooLarge,
  TooAnisotropic,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Regime: return "Regime";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::NoCrossing: return "NoCrossing";
    case ErrorKind::ContinuationStall: return "ContinuationStall";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::TooAnisotropic: return "TooAnisotropic";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gprig
