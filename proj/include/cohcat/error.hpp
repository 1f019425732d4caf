#pragma once

#include <stdexcept>
#include <string>

namespace cohcat {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A dense construction would exceed the configured dimension cap.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// A theorem-level precondition does not hold for the arguments.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// A lemma hypothesis does not hold; the message names which one.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class NotTracePreserving : public Error {
 public:
  using Error::Error;
};

}  // namespace cohcat
