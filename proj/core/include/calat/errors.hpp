#pragma once

#include <stdexcept>
#include <string>

namespace calat {

/// Base class for all calat errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A denominator of a determinant-ratio or compatibility expression vanished.
/// The message names the offending factor and, where known, the lattice site.
class ZeroDenominator : public Error {
public:
  using Error::Error;
};

/// A transition matrix is singular (c*alpha = 0 or b*gamma = 0).
class SingularTransition : public Error {
public:
  using Error::Error;
};

/// A coefficient field fails the compatibility conditions; carries the site
/// and the first nonzero residual in the message.
class IncompatibleField : public Error {
public:
  using Error::Error;
};

/// An operation referenced lattice sites outside the window.
class MissingStencil : public Error {
public:
  using Error::Error;
};

/// Input coefficients violate the standing assumptions (d = a-b-c != 0,
/// bc != 0, a != 1); the message names the violated clause.
class AssumptionViolated : public Error {
public:
  using Error::Error;
};

/// Malformed file or scalar text.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Non-finite float input (NaN or infinity).
class InvalidInput : public Error {
public:
  using Error::Error;
};

} // namespace calat
