#pragma once

#include <stdexcept>
#include <string>

namespace wma {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input data that violates an operation's precondition (inadmissible start, f <= 0, ...).
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Newton solve at fixed t did not converge; the continuation driver shrinks the step.
class StepFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wma
