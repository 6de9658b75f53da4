#pragma once

#include <stdexcept>
#include <string>

namespace augpulse {

// Thrown for malformed user input. The CLI maps these to exit code 1.
struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Broken internal guarantees. The CLI maps these to exit code 2.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidGate : UserError {
  using UserError::UserError;
};

struct ParseError : UserError {
  ParseError(int line, const std::string& msg)
      : UserError("line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

struct UnknownGate : ParseError {
  UnknownGate(int line, const std::string& name)
      : ParseError(line, "unknown gate '" + name + "'"), name(name) {}
  std::string name;
};

struct RegisterTooLarge : UserError {
  using UserError::UserError;
};

struct SchemaError : UserError {
  SchemaError(const std::string& pointer, const std::string& msg)
      : UserError(pointer + ": " + msg), pointer(pointer) {}
  std::string pointer;
};

struct InvariantViolation : SchemaError {
  using SchemaError::SchemaError;
};

struct AmplitudeOverflow : UserError {
  using UserError::UserError;
};

struct OverlapError : UserError {
  using UserError::UserError;
};

struct UnknownChannel : UserError {
  using UserError::UserError;
};

struct MissingCalibration : UserError {
  using UserError::UserError;
};

struct EchoStructureError : UserError {
  using UserError::UserError;
};

struct UnloweredGate : UserError {
  using UserError::UserError;
};

struct EquivalenceViolation : InternalError {
  using InternalError::InternalError;
};

struct NotReachable : UserError {
  using UserError::UserError;
};

struct StepSizeError : InternalError {
  using InternalError::InternalError;
};

struct CalibrationError : UserError {
  using UserError::UserError;
};

struct FitError : UserError {
  using UserError::UserError;
};

}  // namespace augpulse
