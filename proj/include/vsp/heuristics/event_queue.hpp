#pragma once

#include <algorithm>
#include <set>
#include <unordered_map>
#include <vector>

#include "vsp/heuristics/slot.hpp"
#include "vsp/instance.hpp"

namespace vsp::heuristics {

/// Book-keeping for the dispatch loop:
///  - the ordered set of pending time stamps,
///  - stamp -> vehicles sitting at a node with that stamp,
///  - node -> stamps already assigned there (sorted), with their owners.
class EventQueue {
 public:
  struct Occupant {
    Tick stamp;
    StepRef who;
  };

  explicit EventQueue(const Instance& inst)
      : inst_(inst), occupants_(inst.graph().vertex_count()),
        max_gap_(inst.graph().vertex_count(), 0) {
    for (const Separation& s : inst.separations()) {
      Tick& g = max_gap_[inst.vertex_at(s.first)];
      g = std::max(g, s.gap);
    }
  }

  bool empty() const { return stamps_.empty(); }
  Tick front() const { return *stamps_.begin(); }

  /// Vehicles waiting at stamp t. The list may grow while t is processed.
  std::vector<int>& at(Tick t) { return by_stamp_[t]; }

  void pop_front() {
    const Tick t = front();
    by_stamp_.erase(t);
    stamps_.erase(stamps_.begin());
  }

  /// Records step `who` at `stamp`; if the vehicle still has links to go it
  /// becomes pending at that stamp.
  void assign(StepRef who, Tick stamp, bool pending) {
    auto& list = occupants_[inst_.vertex_at(who)];
    const auto pos = std::upper_bound(
        list.begin(), list.end(), stamp,
        [](Tick s, const Occupant& o) { return s < o.stamp; });
    list.insert(pos, {stamp, who});
    if (pending) {
      by_stamp_[stamp].push_back(who.vehicle);
      stamps_.insert(stamp);
    }
  }

  /// Assigned stamps at the node of `who` that can still constrain a slot
  /// at or after `lower_bound`, with their separation against `who`.
  std::vector<Blocker> blockers(StepRef who, Tick lower_bound) const {
    const int v = inst_.vertex_at(who);
    const auto& list = occupants_[v];
    const Tick from = lower_bound - max_gap_[v];
    auto it = std::upper_bound(list.begin(), list.end(), from,
                               [](Tick s, const Occupant& o) { return s < o.stamp; });
    std::vector<Blocker> out;
    for (; it != list.end(); ++it) {
      if (it->who.vehicle == who.vehicle) continue;
      if (const auto gap = inst_.separation(it->who, who); gap && *gap > 0)
        out.push_back({it->stamp, *gap});
    }
    return out;
  }

  const std::vector<Occupant>& occupants(int vertex) const { return occupants_[vertex]; }

 private:
  const Instance& inst_;
  std::set<Tick> stamps_;
  std::unordered_map<Tick, std::vector<int>> by_stamp_;
  std::vector<std::vector<Occupant>> occupants_;
  std::vector<Tick> max_gap_;
};

}  // namespace vsp::heuristics
