#pragma once

#include <stdexcept>
#include <string>

namespace vsp {

/// Malformed or inconsistent instance data.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A schedule whose shape does not match the instance's walks.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request that cannot be served with the given configuration, e.g. a
/// weighted objective on an instance without weights.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace vsp
