#pragma once

#include <stdexcept>
#include <string>

namespace qnn {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input list length does not match the perceptron's number of channels.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// An all-zero amplitude pair was offered as a qubit.
class UnnormalizableError : public Error {
 public:
  using Error::Error;
};

/// A zero state was measured or fed forward as a qubit.
class UnmeasurableStateError : public Error {
 public:
  using Error::Error;
};

/// A value violates a documented precondition or configuration invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The learning rule is only defined for an identity output operator.
class OutputOperatorError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Layer wiring references an output that does not exist.
class WiringError : public Error {
 public:
  using Error::Error;
};

/// Malformed pattern or configuration text.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qnn
