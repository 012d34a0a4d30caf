#pragma once

#include <stdexcept>
#include <string>

namespace dsg {

/// Instance parameters violate their admissible ranges.
struct InvalidParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An (alpha, x) pair lies outside the feasible action set.
struct FeasibilityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A scalar argument is outside the domain of the operation.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The closed form requested is not available for these parameters.
struct UnsupportedParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Bad oracle configuration.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Bad sweep specification.
struct SpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// File could not be read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dsg
