#pragma once

#include <stdexcept>
#include <string>

namespace swipt {

// Bad or inconsistent input parameters (config file, CLI flags, API preconditions).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameter on the boundary of the model where a documented limit applies
// instead of the general formula (e.g. rho = 0 or rho = 1).
class BoundaryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical routine could not reach its requested accuracy.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace swipt
