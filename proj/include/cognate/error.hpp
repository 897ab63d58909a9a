#pragma once

#include <stdexcept>
#include <string>

namespace cognate {

// Bad input data: malformed files, unknown languages, undefined statistics.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller supplied an argument outside an operation's domain.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace cognate
