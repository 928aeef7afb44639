#pragma once

#include <stdexcept>
#include <string>

namespace lts {

/// Invalid configuration or invalid input data. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Linear solver breakdown or failure to converge. Maps to exit code 2.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem read/write failure. Maps to exit code 3.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lts
