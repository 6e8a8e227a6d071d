#pragma once

#include <stdexcept>
#include <string>

namespace itop {

// Malformed input data (bad file contents, inconsistent matrices, ...).
// Treated as a usage error by the CLI (exit code 2).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration or arguments (exit code 2).
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace itop
