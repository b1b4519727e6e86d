#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string_view>

#include "vsp/instance.hpp"

namespace vsp::heuristics {

enum class Mode { Proximity, AbsDeadlineProximity, RelDeadlineProximity };

inline constexpr Mode kAllModes[] = {Mode::Proximity, Mode::AbsDeadlineProximity,
                                     Mode::RelDeadlineProximity};

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Proximity: return "proximity";
    case Mode::AbsDeadlineProximity: return "abs";
    case Mode::RelDeadlineProximity: return "rel";
  }
  return "unknown";
}

/// What to do with vehicles whose delay slack is already negative.
enum class NegativeSlack {
  LowestPriority,  // they go after every vehicle with slack left
  ClampToZero,     // literal max(0, slack): they compete as slack 0
};

/// Where a vehicle stands when its key is computed. `step == -1` means the
/// vehicle has not entered its walk yet and `stamp` is its request time.
struct VehicleState {
  int vehicle = 0;
  int step = -1;
  Tick stamp = 0;
};

struct SortKey {
  Tick first = 0;                 // time to the next node
  std::optional<double> second;   // priority; empty in proximity mode
  bool out_of_slack = false;      // only set under NegativeSlack::LowestPriority
  int vehicle = 0;

  friend bool operator<(const SortKey& a, const SortKey& b) {
    if (a.first != b.first) return a.first < b.first;
    if (a.out_of_slack != b.out_of_slack) return !a.out_of_slack;
    if (!a.out_of_slack && a.second && b.second && *a.second != *b.second)
      return *a.second < *b.second;
    return a.vehicle < b.vehicle;
  }
};

inline SortKey sorting_key(const VehicleState& state, Mode mode, const Instance& inst,
                           NegativeSlack policy = NegativeSlack::LowestPriority) {
  const Walk& w = inst.walk(state.vehicle);
  SortKey key;
  key.vehicle = state.vehicle;

  Tick remaining = 0;
  int remaining_nodes = 0;
  if (state.step < 0) {
    key.first = state.stamp;
    for (Tick t : w.tau_min) remaining += t;
    remaining_nodes = w.size();
  } else {
    key.first = state.step < w.links() ? w.tau_min[state.step] : 0;
    for (int i = state.step; i < w.links(); ++i) remaining += w.tau_min[i];
    remaining_nodes = w.size() - 1 - state.step;
  }
  if (mode == Mode::Proximity) return key;

  const Tick deadline = inst.d_soft(state.vehicle);
  if (is_infinite(deadline)) {
    key.second = std::numeric_limits<double>::infinity();
    return key;
  }
  const Tick slack = deadline - (state.stamp + remaining);
  if (slack < 0 && policy == NegativeSlack::LowestPriority) {
    key.out_of_slack = true;
    return key;
  }
  double second = static_cast<double>(std::max<Tick>(0, slack));
  if (mode == Mode::RelDeadlineProximity)
    second /= static_cast<double>(std::max(1, remaining_nodes));
  key.second = second;
  return key;
}

}  // namespace vsp::heuristics
