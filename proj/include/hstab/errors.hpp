#pragma once

#include <stdexcept>
#include <string>

namespace hstab {

/// Base class for all hstab errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two values built over different primes were combined.
class MixedContext : public Error {
public:
  using Error::Error;
};

/// A fraction whose reduced denominator is not a power of p.
class NotInRing : public Error {
public:
  using Error::Error;
};

/// A matrix violates the zero/diagonal pattern it claims.
class PatternViolation : public Error {
public:
  using Error::Error;
};

/// A group element has Prufer coordinates finer than the frame resolution.
class DepthExceeded : public Error {
public:
  using Error::Error;
};

class FrameTooLarge : public Error {
public:
  using Error::Error;
};

class NotPartialPermutation : public Error {
public:
  using Error::Error;
};

/// A character order divisible by p was requested (no such character exists).
class InvalidOrder : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

/// Random search did not find a witness; retry with a new seed.
class WitnessNotFound : public Error {
public:
  using Error::Error;
};

} // namespace hstab
