#pragma once

#include <stdexcept>

namespace ras {

// Bad parameters, bounds, or dimensions supplied by the caller.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The objective name is recognized but its data files / external suite are
// not shipped with this library.
class UnavailableObjectiveError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// The sampler kept drawing displacements with near-zero norm; the search
// box has degenerated beyond what resampling can fix.
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was invoked on inputs that violate its stated preconditions.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ras
