#pragma once

#include <stdexcept>
#include <string>

namespace pgrowth {

// Inputs that do not describe a valid group, metric or experiment.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical precondition of an operation is not met.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration exceeded its budget; no partial result is reported.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A proven property failed at run time.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace pgrowth
