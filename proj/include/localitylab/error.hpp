#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace localitylab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownElement : public Error {
 public:
  using Error::Error;
};

class NonSType : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularOverlap : public Error {
 public:
  using Error::Error;
};

/// SCF failed to meet both convergence thresholds within the iteration budget.
class ScfNotConverged : public Error {
 public:
  ScfNotConverged(const std::string& what, double last_energy, double residual)
      : Error(what), last_energy_(last_energy), residual_(residual) {}
  double last_energy() const noexcept { return last_energy_; }
  double residual() const noexcept { return residual_; }

 private:
  double last_energy_;
  double residual_;
};

class DegenerateHomo : public Error {
 public:
  using Error::Error;
};

class NonOrthogonalBasis : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

class ComplexityGuard : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class PhaseWrap : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConventionError : public Error {
 public:
  using Error::Error;
};

}  // namespace localitylab
