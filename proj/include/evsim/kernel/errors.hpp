#pragma once

#include <stdexcept>

namespace evsim {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Operation illegal in the object's current lifecycle state.
struct StateError : std::logic_error {
  using std::logic_error::logic_error;
};

struct RoutingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SchedulingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Misuse of the environment API (step before reset, action outside the space, ...).
struct UsageError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace evsim
