#pragma once

#include <stdexcept>
#include <string>

namespace crawford {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (matrix entries, matrix files, SDPA files).
class ParseError : public Error {
public:
  using Error::Error;
};

/// A precondition on the mathematical input was violated.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Floating-point failure: non-convergence, loss of rank, degenerate ellipsoid.
class NumericalError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace crawford
