#pragma once

#include <stdexcept>
#include <string>

namespace pilotwave {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters violate a documented invariant (sign of the charge, n < 0, ...).
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// Series denominator hits a pole of the Pochhammer symbol (b_k = 0).
class PoleError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Four-velocity normalisation drifted past the allowed bound.
class StepTooLarge : public Error {
 public:
  using Error::Error;
};

/// Richardson order estimate below the accepted minimum.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

/// Two-wave decomposition requires equal on-circle amplitudes.
class AmplitudeMismatch : public Error {
 public:
  using Error::Error;
};

class EmptySet : public Error {
 public:
  using Error::Error;
};

}  // namespace pilotwave
