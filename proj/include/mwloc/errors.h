#pragma once

#include <stdexcept>

namespace mwloc {

// Invalid arguments or configuration. The CLI maps these to exit code 1.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Solver failures and broken numerical self-checks (exit code 2).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem too large for dense treatment (exit code 2).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mwloc
