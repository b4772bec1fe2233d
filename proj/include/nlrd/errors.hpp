#pragma once

#include <stdexcept>
#include <string>

namespace nlrd {

/// Invalid user-supplied parameters (bad a, d, grid size, config keys).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A construction was requested outside the case where it is defined
/// (wrong kernel, missing branches, inadmissible gluing parameter,
/// region mismatch).
struct CaseError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Root finding or quadrature failed to converge, or the field blew up.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nlrd
