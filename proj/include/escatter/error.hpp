#pragma once

#include <stdexcept>
#include <string>

namespace escatter {

/// Thrown when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Thrown when a numerical procedure fails (non-finite values, no
/// convergence, a matrix that is not positive semidefinite).
class NumericalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid run configuration (CLI flags or config file).
class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace escatter
