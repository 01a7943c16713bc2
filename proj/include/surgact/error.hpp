#pragma once

#include <stdexcept>
#include <string>

namespace surgact {

// Error taxonomy, mapped to process exit codes by the CLI:
//   ConfigError -> usage (1), DataError/ShapeError -> data (2), NumericError -> numeric (3)
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace surgact
