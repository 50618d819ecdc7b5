#pragma once

#include <stdexcept>
#include <string>

namespace rfgap {

/// Process exit codes. Every error class below maps to exactly one code.
enum class ExitCode : int {
  ok = 0,
  internal = 1,
  parse = 2,
  invariant = 3,
  berger_tolerance = 4,
  degenerate_region = 5,
  flat_tensor = 6,
  io = 7,
  frame_not_critical = 8,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual ExitCode code() const noexcept { return ExitCode::internal; }
};

class ParseError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode code() const noexcept override { return ExitCode::parse; }
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode code() const noexcept override { return ExitCode::invariant; }
};

class DegenerateRegion : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode code() const noexcept override { return ExitCode::degenerate_region; }
};

class FlatTensor : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode code() const noexcept override { return ExitCode::flat_tensor; }
};

class IoError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode code() const noexcept override { return ExitCode::io; }
};

// The direction handed to the Siu-Yang formula is not critical for H.
class FrameNotCritical : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode code() const noexcept override { return ExitCode::frame_not_critical; }
};

// Local search failed to reach a critical point. Never expected on the smooth
// compact problems here, so it maps to the internal-fault code.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace rfgap
