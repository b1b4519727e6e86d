#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "vsp/time.hpp"

namespace vsp::heuristics {

/// A stamp already assigned at a node together with the separation it
/// demands from the requesting vehicle. It forbids the open interval
/// (stamp - gap, stamp + gap).
struct Blocker {
  Tick stamp = 0;
  Tick gap = 0;
};

/// Smallest t >= lower_bound with |t - stamp| >= gap for every blocker.
inline Tick earliest_free_time(Tick lower_bound, std::span<const Blocker> blockers) {
  std::vector<Blocker> sorted(blockers.begin(), blockers.end());
  std::sort(sorted.begin(), sorted.end(), [](const Blocker& a, const Blocker& b) {
    return a.stamp - a.gap < b.stamp - b.gap;
  });
  Tick t = lower_bound;
  for (const Blocker& b : sorted) {
    if (b.gap <= 0) continue;
    if (b.stamp - b.gap >= t) break;
    t = std::max(t, b.stamp + b.gap);
  }
  return t;
}

/// Earliest separation-feasible slot inside [lower_bound, window_upper], or
/// nullopt when the window is too tight.
inline std::optional<Tick> earliest_feasible_slot(Tick lower_bound, Tick window_upper,
                                                  std::span<const Blocker> blockers) {
  const Tick t = earliest_free_time(lower_bound, blockers);
  if (!is_infinite(window_upper) && t > window_upper) return std::nullopt;
  return t;
}

}  // namespace vsp::heuristics
