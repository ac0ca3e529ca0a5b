#pragma once

#include <stdexcept>

namespace swarmmatch {

/// Invalid run/swarm configuration (bad population, bounds, flags, ...).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (z0 <= 0, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Near-singular denominator in a network computation.
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failure writing or creating output artifacts.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace swarmmatch
