#pragma once

#include <stdexcept>
#include <string>

namespace kp5 {

/// Base of every error raised by the library.
class Kp5Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration value (odd grid size, negative index, ...).
class SpecError : public Kp5Error {
 public:
  using Kp5Error::Kp5Error;
};

/// A symbol with a 1/ξ factor was evaluated on the ξ = 0 line.
class SingularSymbolError : public Kp5Error {
 public:
  using Kp5Error::Kp5Error;
};

/// A Fourier multiplier produced NaN or Inf at some lattice point.
class SymbolEvaluationError : public Kp5Error {
 public:
  SymbolEvaluationError(const std::string& what, int k, int l)
      : Kp5Error(what), k_(k), l_(l) {}
  int k() const { return k_; }
  int l() const { return l_; }

 private:
  int k_;
  int l_;
};

/// A field carries energy on the ξ = 0 line where |ξ|^{-1} weights are required.
class ZeroMassError : public Kp5Error {
 public:
  using Kp5Error::Kp5Error;
};

/// A norm ratio has a vanishing denominator.
class UndefinedRatioError : public Kp5Error {
 public:
  using Kp5Error::Kp5Error;
};

/// Malformed binary dump, shape mismatch or bad config document.
class FormatError : public Kp5Error {
 public:
  using Kp5Error::Kp5Error;
};

/// Run configuration document does not match the schema.
class ConfigError : public SpecError {
 public:
  using SpecError::SpecError;
};

class IoError : public Kp5Error {
 public:
  using Kp5Error::Kp5Error;
};

}  // namespace kp5
