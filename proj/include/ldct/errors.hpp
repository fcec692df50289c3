#pragma once

#include <stdexcept>
#include <string>

namespace ldct {

/// Raised when user-supplied data (configs, manifests, score files) fails
/// validation. Maps to CLI exit code 1.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a file cannot be read or written. Maps to CLI exit code 2.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ldct
