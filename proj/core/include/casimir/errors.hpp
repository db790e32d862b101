#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Base of every exception thrown by the library. Callers that only need to
// know "the computation failed" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of the operation
// (non-positive frequency, wrong spectral sector, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The dielectric model kind cannot be used by the requested operation,
// e.g. asking a PerfectMirror for its permittivity.
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

// A closed-form coefficient has a vanishing denominator at (omega, k, p).
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double omega, double k, int polarization)
      : Error(what), omega_(omega), k_(k), polarization_(polarization) {}

  double omega() const { return omega_; }
  double k() const { return k_; }
  int polarization() const { return polarization_; }

 private:
  double omega_;
  double k_;
  int polarization_;
};

// Optical data or parameter files that cannot be turned into a model.
class IngestionError : public Error {
 public:
  using Error::Error;
};

// Adaptive integration or series summation did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double worst_lo, double worst_hi, double worst_error)
      : Error(what), worst_lo_(worst_lo), worst_hi_(worst_hi), worst_error_(worst_error) {}

  double worst_panel_lo() const { return worst_lo_; }
  double worst_panel_hi() const { return worst_hi_; }
  double worst_panel_error() const { return worst_error_; }

 private:
  double worst_lo_;
  double worst_hi_;
  double worst_error_;
};

}  // namespace casimir
