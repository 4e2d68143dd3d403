#pragma once

#include <stdexcept>
#include <string>

namespace abext {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller broke a contract: dimension mismatch, endpoint mismatch,
/// reference to the wrong group, out-of-range degree.
class InputError : public Error {
public:
  explicit InputError(const std::string& what) : Error(what) {}
};

/// A value failed semantic validation while being constructed.
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Which short-exact-sequence invariant failed validation.
enum class SesDefect {
  IllFormed,      // endpoints do not line up
  NotInjective,   // inclusion has a kernel
  NotSurjective,  // projection has a cokernel
  NotComplex,     // projection o inclusion is not the zero map
  NotExact,       // image of inclusion differs from kernel of projection
};

class SesValidationError : public ValidationError {
public:
  SesValidationError(SesDefect defect, const std::string& what)
      : ValidationError(what), defect_(defect) {}
  SesDefect defect() const noexcept { return defect_; }

private:
  SesDefect defect_;
};

}  // namespace abext
