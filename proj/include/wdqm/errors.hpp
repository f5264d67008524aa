#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace wdqm {

// Base of every error thrown by the library. The CLI maps these onto exit
// codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

// Result not representable in double precision.
class OverflowError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "overflow"; }
};

// Evaluation at a removable or genuine singularity without a certified limit.
class SingularityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "singularity"; }
};

// Quadrature domain truncation left a tail above tolerance.
class TruncationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "truncation"; }
};

class QuadratureError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "quadrature"; }
};

// sin(ωt) too close to zero for the harmonic-oscillator propagator.
class CausticError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "caustic"; }
};

class GridMismatchError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "grid_mismatch"; }
};

inline double require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw OverflowError(std::string(what) + ": non-finite result");
  return v;
}

inline std::complex<double> require_finite(std::complex<double> v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw OverflowError(std::string(what) + ": non-finite result");
  return v;
}

}  // namespace wdqm
