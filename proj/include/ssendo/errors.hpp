#pragma once

#include <stdexcept>
#include <string>

namespace ssendo {

// Caller passed something outside an operation's precondition.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A self-check inside the library failed (two methods disagree, an invariant broke).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A computation needed more than its configured budget (precision, iterations).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shipped or cached data is missing or fails validation.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The request is well-formed but not supported by this build (e.g. large ell).
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A reproduced value contradicts the value it is checked against.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ssendo
