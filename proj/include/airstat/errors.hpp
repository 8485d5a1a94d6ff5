#pragma once

#include <stdexcept>
#include <string>

namespace airstat {

// Bad configuration or unusable input source (CLI exit code 1).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Data that cannot support the requested computation (CLI exit code 2).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace airstat
