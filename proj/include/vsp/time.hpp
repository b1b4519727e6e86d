#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace vsp {

/// All durations, deadlines and time stamps are integer ticks.
using Tick = std::int64_t;

/// Stand-in for +infinity. Large enough to dominate every real horizon, small
/// enough that adding two of them cannot overflow.
inline constexpr Tick kInfinity = std::numeric_limits<Tick>::max() / 4;

constexpr bool is_infinite(Tick t) { return t >= kInfinity; }

/// Saturating addition: anything plus infinity stays infinity.
constexpr Tick add_sat(Tick a, Tick b) {
  if (is_infinite(a) || is_infinite(b)) return kInfinity;
  return a + b;
}

/// Conversion between user units and ticks. Every value fed through
/// `to_ticks` must land exactly on a tick.
struct TimeScale {
  std::int64_t ticks_per_unit = 1;

  Tick to_ticks(double units) const {
    if (std::isinf(units) && units > 0) return kInfinity;
    const double scaled = units * static_cast<double>(ticks_per_unit);
    const double rounded = std::nearbyint(scaled);
    if (std::fabs(scaled - rounded) > 1e-6 * std::max(1.0, std::fabs(scaled)))
      throw std::invalid_argument("value " + std::to_string(units) +
                                  " is not a whole number of ticks at " +
                                  std::to_string(ticks_per_unit) +
                                  " ticks per unit");
    return static_cast<Tick>(rounded);
  }

  double to_units(Tick t) const {
    if (is_infinite(t)) return std::numeric_limits<double>::infinity();
    return static_cast<double>(t) / static_cast<double>(ticks_per_unit);
  }
};

}  // namespace vsp
