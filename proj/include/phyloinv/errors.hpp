#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phyloinv {

// Malformed or inconsistent user input (bad group text, bad tree, invalid
// flow data). The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured size guard (flow count cap) was exceeded. CLI exit code 3.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by long-running factorizations when their stop token fires.
class Cancelled : public std::runtime_error {
public:
    Cancelled() : std::runtime_error("operation cancelled") {}
};

// Default upper bound on the number of flows g^(l-1) any enumeration will
// materialize.
inline constexpr std::size_t kDefaultFlowCap = 1'000'000;

} // namespace phyloinv
