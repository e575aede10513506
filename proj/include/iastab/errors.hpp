#pragma once
#include <stdexcept>
#include <string>

namespace iastab {

// Invalid configuration or input schema. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine failed to converge or produced a non-finite value.
// Carries the partial value and the iteration count reached. Exit code 3.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double partial, long iterations)
        : std::runtime_error(what), partial_value(partial), iterations(iterations) {}
    double partial_value;
    long iterations;
};

// An enumeration guard (e.g. 2^N subset scans) was exceeded. Exit code 4.
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace iastab
