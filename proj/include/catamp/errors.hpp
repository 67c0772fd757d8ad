#pragma once

#include <stdexcept>
#include <string>

namespace catamp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration (bad ranges, mismatched truncation).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Index outside the truncated basis.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Mathematically undefined request, e.g. an odd cat with zero amplitude.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Too much probability mass near or beyond the Fock cutoff.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double mass) : Error(what), mass_(mass) {}
  double mass() const noexcept { return mass_; }

 private:
  double mass_;
};

/// A conditional measurement outcome that has (numerically) zero probability.
class ZeroHeraldError : public Error {
 public:
  ZeroHeraldError(const std::string& what, double probability)
      : Error(what), probability_(probability) {}
  double probability() const noexcept { return probability_; }

 private:
  double probability_;
};

/// Detector outcome impossible under every hypothesis in the ensemble.
class ImpossibleObservationError : public Error {
 public:
  using Error::Error;
};

/// A state violated a physical invariant (hermiticity, PSD, trace).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace catamp
