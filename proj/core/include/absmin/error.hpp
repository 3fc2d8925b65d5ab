#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace absmin {

/// Input violates a documented precondition (wrong degree, non-real
/// coefficients, unstable loop where stability is required, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative method hit its cap without meeting its residual test.
/// Carries the best iterate so callers can inspect what was found.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<std::complex<double>> best,
                   double residual)
      : std::runtime_error(what), best_(std::move(best)), residual_(residual) {}

  const std::vector<std::complex<double>>& best_iterate() const { return best_; }
  double residual() const { return residual_; }

 private:
  std::vector<std::complex<double>> best_;
  double residual_;
};

/// The abscissa is not differentiable here (multiple active root).
class NonsmoothPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace absmin
