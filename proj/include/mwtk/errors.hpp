#pragma once

#include <stdexcept>
#include <string>

namespace mwtk {

// Bad arguments, malformed files, violated preconditions. CLI exit code 1.
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A computation that cannot proceed (degenerate data, no solution). CLI exit code 2.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace mwtk
