#pragma once

#include <stdexcept>
#include <string>

namespace dll {

/// Invalid or inconsistent user input (config files, CSV data, CLI args).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure (integrator drift, non-convergent optimization).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dll
