#pragma once

#include <stdexcept>
#include <string>

namespace dirac {

// Invalid arguments or inputs outside an operation's admissible range.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Quadrature non-convergence, disagreeing schemes, invariant drift.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration budgets, oversized spin-assignment spaces.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation is not defined for the given group model.
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed but unusable configuration (trivial spin, malformed files).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace dirac
