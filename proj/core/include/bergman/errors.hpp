#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

/// An argument lies outside the domain where the quantity is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or iteration did not reach its tolerance within the term budget.
class NonConvergent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation at a pole of the kernel (for instance xi = 0 with s >= 1).
class SingularArgument : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The integrand is not integrable against the requested measure.
class IntegrabilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quadrature nodes or weights failed validation after construction.
class BuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The evaluation point is too close to the boundary for the configured rule.
class QuadratureAccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bergman
