#pragma once

#include <stdexcept>
#include <string>

namespace oscenv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or argument is outside its admissible range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A time step violates a stability bound; see StabilityReport.
class StabilityViolation : public Error {
 public:
  using Error::Error;
};

/// A solver produced NaN/Inf or an otherwise unusable state.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Input that should be a probability density is not one.
class DensityError : public Error {
 public:
  using Error::Error;
};

/// Malformed or missing input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace oscenv
