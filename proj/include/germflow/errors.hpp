#pragma once

#include <stdexcept>
#include <string>

namespace germflow {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Point outside the field's domain (0, delta], or an iterated log undefined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A denominator such as 1 + u(x) is non-positive on the requested domain.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Evaluation cap of an adaptive routine exhausted.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An integrand or evaluator returned inf or nan.
class NonFinite : public Error {
 public:
  using Error::Error;
};

/// Requested time or point falls outside the tabulated range of a time map.
class RangeExceeded : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class NotHyperbolic : public Error {
 public:
  using Error::Error;
};

/// Malformed command line or field specification string.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace germflow
