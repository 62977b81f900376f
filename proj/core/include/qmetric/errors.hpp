#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmetric {

/// Base class for runtime failures raised by the numerical routines.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative eigensolver ran out of iterations before meeting its tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::size_t iterations, double residual)
      : Error(what), iterations_(iterations), residual_(residual) {}

  std::size_t iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

/// Requested problem size exceeds the configured memory budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Time stepping produced a non-finite state.
class PropagationError : public Error {
 public:
  PropagationError(const std::string& what, std::size_t step) : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace qmetric
