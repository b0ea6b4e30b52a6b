#pragma once

#include <stdexcept>
#include <string>

namespace q8curves {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested modulus is not an odd prime in [7, 2^62).
class InvalidPrime : public Error {
 public:
  using Error::Error;
};

class ZeroInverse : public Error {
 public:
  ZeroInverse() : Error("inverse of zero") {}
};

/// Parameter a in {2, -2}: x(x^4-1)(x^4+ax^2+1) has a repeated root.
class SingularCurve : public Error {
 public:
  SingularCurve() : Error("singular curve: a must not be 2 or -2") {}
};

class BothZero : public Error {
 public:
  BothZero() : Error("gcd of two zero polynomials") {}
};

class ZeroInput : public Error {
 public:
  explicit ZeroInput(const std::string& what) : Error(what) {}
};

class NotSquarefree : public Error {
 public:
  NotSquarefree() : Error("polynomial is not squarefree") {}
};

/// gcdall has a root at +-2 or a repeated root, so degree counting is invalid.
class StarViolated : public Error {
 public:
  explicit StarViolated(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant failed. Always indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

#define Q8_ENSURE(cond, msg)                                                   \
  do {                                                                         \
    if (!(cond)) {                                                             \
      throw ::q8curves::InternalError(std::string(__FILE__) + ":" +            \
                                      std::to_string(__LINE__) + ": " + (msg)); \
    }                                                                          \
  } while (0)

}  // namespace q8curves
