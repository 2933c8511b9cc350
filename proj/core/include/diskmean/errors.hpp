#pragma once

#include <stdexcept>
#include <string>

namespace diskmean {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid arguments or violated preconditions.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Evaluation argument outside the configured accuracy envelope.
class EnvelopeError : public ValidationError {
 public:
  explicit EnvelopeError(const std::string& what) : ValidationError(what) {}
};

/// An iterative procedure failed to settle within its budget.
class NonConvergenceError : public Error {
 public:
  explicit NonConvergenceError(const std::string& what) : Error(what) {}
};

/// A zero-catalog certification step failed (counts do not reconcile,
/// a contour could not be stabilised, or refinement escaped its cell).
class CertificationError : public Error {
 public:
  explicit CertificationError(const std::string& what) : Error(what) {}
};

/// A contour passes too close to a zero of the integrand denominator.
/// Callers may retry with a jittered contour.
class BoundaryTooCloseError : public CertificationError {
 public:
  explicit BoundaryTooCloseError(const std::string& what) : CertificationError(what) {}
};

/// A winding integral failed to stabilise within 0.1 of an integer.
class WindingUnstableError : public CertificationError {
 public:
  explicit WindingUnstableError(const std::string& what) : CertificationError(what) {}
};

}  // namespace diskmean
