#pragma once

#include <stdexcept>
#include <string>

namespace willmore {

// Invalid user-facing configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure mid-computation (CLI exit code 3, partial report kept).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void check_config(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

inline void check_numeric(bool ok, const std::string& msg) {
  if (!ok) throw NumericalError(msg);
}

}  // namespace willmore
