// errors.hpp — exception hierarchy shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace silsbm {

// Invalid user input: bad config keys, out-of-range parameters, schema
// violations. The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured resource ceiling would be exceeded (basis dimension,
// operator nonzero count). Treated as a config problem.
class CapacityError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Numerical failure during a run: norm blow-up, non-finite amplitudes,
// quadrature non-convergence. The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace silsbm
