#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (|z| >= 1, p < 1, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Two points of a sequence coincide to within double resolution.
struct DegenerateSequenceError : Error {
  using Error::Error;
};

/// A numerical extraction could not reach its accuracy target.
struct AccuracyError : Error {
  using Error::Error;
};

/// A parametrised symbol could not be built with the requested parameters.
struct ConstructionError : Error {
  using Error::Error;
};

/// An asymptotic formula was requested outside its range of validity.
struct RangeError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace hardy
