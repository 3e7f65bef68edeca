#pragma once

#include <stdexcept>
#include <string>

namespace rentscope {

// Malformed or missing input data. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Bad invocation (unknown flag, missing argument). Exit code 1.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rentscope
