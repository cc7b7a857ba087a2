#ifndef SEAROUTE_ERRORS_HPP
#define SEAROUTE_ERRORS_HPP

#include <stdexcept>

namespace searoute {

// Bad user-supplied values: out-of-range parameters, malformed geometry,
// unusable configurations.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Query outside the environment grid. Fields are undefined there, so no
// extrapolation is attempted.
class OutOfDomain : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace searoute

#endif
