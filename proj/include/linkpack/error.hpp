#pragma once

#include <stdexcept>
#include <string>

namespace linkpack {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value breaks an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Geometry leaves the unit cube.
class OutOfCubeError : public Error {
 public:
  using Error::Error;
};

/// Two curves that must stay apart come closer than their declared distance.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed the configured memory budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Generic projection could not be found, or curves nearly touch.
class DegenerateProjection : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed; indicates a bug rather than bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Wraps an error with the name of the pipeline stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what, bool constraint)
      : Error("[" + stage + "] " + what), stage_(std::move(stage)), constraint_(constraint) {}

  const std::string& stage() const { return stage_; }
  /// True when the underlying failure was a ConstraintViolation.
  bool is_constraint_violation() const { return constraint_; }

 private:
  std::string stage_;
  bool constraint_;
};

}  // namespace linkpack
