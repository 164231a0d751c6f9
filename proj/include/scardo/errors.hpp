#pragma once

#include <stdexcept>
#include <string>

namespace scardo {

// Thrown when model components, configs, or their cross-references fail
// validation. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& message)
        : std::runtime_error(message) {}
};

// File or stream failure. The CLI maps this to exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& message)
        : std::runtime_error(message) {}
};

} // namespace scardo
