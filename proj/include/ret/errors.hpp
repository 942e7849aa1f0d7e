#pragma once

#include <stdexcept>
#include <string>

namespace ret {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A density matrix or nine-tuple that is not a valid state.
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// Coherence block of the generator cannot be inverted.
class DegenerateGenerator : public Error {
 public:
  using Error::Error;
};

class NonUniqueSteadyState : public Error {
 public:
  using Error::Error;
};

class IllConditionedClosedForm : public Error {
 public:
  using Error::Error;
};

class UndefinedYield : public Error {
 public:
  using Error::Error;
};

/// An analytic rate expansion evaluated outside the region where it exists.
class ExpansionInvalid : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Adaptive integrator step size collapsed.
class StiffnessFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotConverged : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ret
