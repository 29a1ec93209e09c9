#pragma once

#include <stdexcept>
#include <string>

namespace dengue {

// Invalid parameter values, invalid states, or violated preconditions.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical computation failed (negative discriminant, non-finite result).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The adaptive step size collapsed below the configured floor.
struct StiffnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent run configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Too few samples to form the requested statistic.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dengue
