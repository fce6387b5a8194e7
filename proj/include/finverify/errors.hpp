#pragma once

#include <stdexcept>
#include <string>

namespace finverify {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field or formula was evaluated outside its admissible region
/// (nonpositive base, nonpositive u, argument outside an interval).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// x = 0, a tan/coth pole, or a flow denominator vanishing.
class SingularPoint : public Error {
 public:
  using Error::Error;
};

class RootFailure : public Error {
 public:
  using Error::Error;
};

/// Right-hand side of an implicit relation lies outside the range of F.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

class NoBracket : public Error {
 public:
  using Error::Error;
};

class QuadFailure : public Error {
 public:
  using Error::Error;
};

class EmptyGrid : public Error {
 public:
  using Error::Error;
};

class UnsupportedPair : public Error {
 public:
  using Error::Error;
};

class BlowUp : public Error {
 public:
  using Error::Error;
};

class StabilityViolation : public Error {
 public:
  using Error::Error;
};

class DomainBreach : public Error {
 public:
  using Error::Error;
};

}  // namespace finverify
