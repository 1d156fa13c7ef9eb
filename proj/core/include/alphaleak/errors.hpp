#pragma once

#include <stdexcept>
#include <string>

namespace alphaleak {

/// Base class for all alphaleak errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A probability entry is negative.
class NegativeMass : public Error {
 public:
  using Error::Error;
};

/// A probability vector does not sum to one within the stated tolerance.
class NotNormalized : public Error {
 public:
  using Error::Error;
};

/// Two symbols in one alphabet share the same label.
class DuplicateLabel : public Error {
 public:
  using Error::Error;
};

/// Alphabets or shapes of two objects do not line up.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an output that the channel never produces.
class ZeroProbabilityOutput : public Error {
 public:
  using Error::Error;
};

/// The requested order is outside the operation's domain.
class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

/// P puts mass where Q has none, so log(dP/dQ) is undefined.
class AbsoluteContinuityViolation : public Error {
 public:
  using Error::Error;
};

/// The conditioning event carries no frequency mass.
class EmptyConditioningSet : public Error {
 public:
  using Error::Error;
};

/// A mean specification combines kind and order in an undefined way.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// Grid resolution is not the reciprocal of a positive integer.
class ResolutionNotUnitFraction : public Error {
 public:
  using Error::Error;
};

}  // namespace alphaleak
