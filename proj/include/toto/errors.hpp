#pragma once

#include <stdexcept>
#include <string>

namespace toto {

/// Problem or physical parameters violate the bound ordering.
class InvalidProblem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A state or argument left the domain where the model is defined
/// (x1 <= 0, negative square-root argument beyond rounding noise, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A root of a transcendental equation produced inconsistent closed-form
/// quantities (inverse-cosine argument outside [-1, 1], bad discriminant).
class InconsistentRoot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The adaptive integrator could not make progress.
class IntegrationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace toto

namespace toto {

/// The enumeration produced no usable extremal for a valid problem.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace toto
