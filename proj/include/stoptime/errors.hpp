#pragma once

#include <stdexcept>
#include <string>

namespace stoptime {

// Bad user input: malformed strings, files, or parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A vertex deeper than the configured bound.
class DepthExceeded : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Alice tried to mark a vertex that would put more than k marks on a path.
class PathBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The tree is too shallow for the builder's spine and recursion.
class DepthExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A proven invariant failed. Always a bug in this library.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The adversary's own per-vertex declaration accounting failed.
class BudgetViolation : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace stoptime
