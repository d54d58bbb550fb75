#pragma once

#include <stdexcept>
#include <string>

namespace epsball {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// -- spectra ------------------------------------------------------------

/// An input entry is below the -1e-10 clipping window.
struct NegativeEntry : Error {
  using Error::Error;
};

/// Input does not sum to 1 within the acceptance tolerance.
struct NotNormalized : Error {
  using Error::Error;
};

/// Two vectors or matrices that must share a dimension do not.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// Entropy functional parameters out of range (alpha <= 0, alpha == 1, s <= 0).
struct InvalidFunctional : Error {
  using Error::Error;
};

/// Scalar argument outside its documented range.
struct OutOfRange : Error {
  using Error::Error;
};

// -- extremal / bounds --------------------------------------------------

struct InvalidEpsilon : Error {
  using Error::Error;
};

/// A post-construction invariant failed. Indicates a bug, not bad input.
struct ConstructionAssertFailed : Error {
  using Error::Error;
};

struct InvalidAlpha : Error {
  using Error::Error;
};

struct InvalidDelta : Error {
  using Error::Error;
};

// -- quantum ------------------------------------------------------------

struct NotSelfAdjoint : Error {
  using Error::Error;
};

struct NotPositiveSemidefinite : Error {
  using Error::Error;
};

struct NotTraceless : Error {
  using Error::Error;
};

/// State has an eigenvalue at or below the faithfulness threshold 1e-12.
struct NotFaithful : Error {
  using Error::Error;
};

struct BadFactorization : Error {
  using Error::Error;
};

/// Candidate state lies outside the epsilon-ball of the reference state.
struct NotInBall : Error {
  using Error::Error;
};

// -- oracle / io --------------------------------------------------------

struct DimensionTooLarge : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace epsball
