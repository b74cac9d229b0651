#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spdm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or partitions do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the numerical content of an input failed
/// (non-Hermitian matrix, unphysical target, negative rate, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method stopped without meeting its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual,
                   std::vector<double> history = {})
      : Error(what), residual_(residual), history_(std::move(history)) {}

  double residual() const noexcept { return residual_; }
  /// Residual per iteration, when the solver keeps one.
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  double residual_;
  std::vector<double> history_;
};

/// A linear system is singular to working tolerance.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// The integrated state left the finite/bounded region.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace spdm
