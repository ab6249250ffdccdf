#pragma once

#include <stdexcept>
#include <string>

namespace exmine {

// Invalid inputs, unresolvable configuration, contract violations.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Failures while executing an otherwise valid request (I/O, numerics).
class RuntimeFailure : public std::runtime_error {
 public:
  explicit RuntimeFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace exmine
