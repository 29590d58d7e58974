#pragma once

#include <stdexcept>
#include <string>

namespace dvrqc {

/// Precondition on an argument was not met (shape, symmetry, index range).
class ContractViolation : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Basis domain is empty or inverted.
class InvalidDomain : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative procedure stopped before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace dvrqc
