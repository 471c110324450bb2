#pragma once

#include <stdexcept>
#include <string>

namespace cycdec {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: malformed documents, out-of-range indices, violated
/// query preconditions. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in GF(2^k)") {}
};

/// An enumeration or resource guard tripped. Oracles never truncate silently.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A computed quantity violated an identity that must hold whenever the
/// preconditions do (e.g. a determinant that is not a perfect square).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace cycdec
