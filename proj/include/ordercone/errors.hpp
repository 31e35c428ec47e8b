#pragma once

#include <stdexcept>
#include <string>

namespace ordercone {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible dimensions were combined.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (text, JSON, CLI values).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration or search budget was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ordercone
