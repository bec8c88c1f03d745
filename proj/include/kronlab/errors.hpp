#pragma once

#include <stdexcept>
#include <string>

namespace kronlab {

// Base of every error the library signals.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input (bad rational text, a >= b, empty vector).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class NotCoprime : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// An operation was called outside its precondition, e.g. the small-lambda
// construction with lambda above (b-a)/(2n).
class NotApplicable : public Error {
 public:
  using Error::Error;
};

// z-window requested with E < lambda.
class EmptyWindow : public Error {
 public:
  using Error::Error;
};

// modify() called with a z outside the window it was checked against.
class WindowViolation : public Error {
 public:
  using Error::Error;
};

// Exhaustive search refused because the instance is above the configured cap.
class TooLarge : public Error {
 public:
  using Error::Error;
};

// A result failed an internal consistency check. Always a bug.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

// Report could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace kronlab
