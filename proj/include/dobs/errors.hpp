#pragma once

#include <stdexcept>
#include <string>

namespace dobs {

// Dimension mismatch or otherwise malformed numeric input.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An iterative kernel failed to converge or produced an unusable result.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scenario file violates the config schema.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The communication graph is not rooted at the leader.
struct AssumptionViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A simulated state left the finite range.
struct DivergenceError : std::runtime_error {
    DivergenceError(const std::string& what, double t) : std::runtime_error(what), time(t) {}
    double time;
};

}  // namespace dobs
