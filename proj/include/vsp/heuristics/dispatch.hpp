#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "vsp/heuristics/event_queue.hpp"
#include "vsp/heuristics/slot.hpp"
#include "vsp/heuristics/sort_key.hpp"
#include "vsp/instance.hpp"
#include "vsp/objective.hpp"

namespace vsp::heuristics {

enum class VehicleStatus { Completed, HardDeadlineViolated, SlotWindowFailed };

inline std::string_view to_string(VehicleStatus s) {
  switch (s) {
    case VehicleStatus::Completed: return "completed";
    case VehicleStatus::HardDeadlineViolated: return "hard_deadline_violated";
    case VehicleStatus::SlotWindowFailed: return "slot_window_failed";
  }
  return "unknown";
}

struct DispatchOptions {
  NegativeSlack negative_slack = NegativeSlack::LowestPriority;
};

struct DispatchResult {
  Mode mode = Mode::Proximity;
  Schedule schedule;
  std::vector<VehicleStatus> status;

  int count(VehicleStatus s) const {
    return static_cast<int>(std::count(status.begin(), status.end(), s));
  }
  int hard_deadline_violations() const {
    return count(VehicleStatus::HardDeadlineViolated);
  }
  int slot_window_failures() const { return count(VehicleStatus::SlotWindowFailed); }
  bool all_completed() const {
    return count(VehicleStatus::Completed) == static_cast<int>(status.size());
  }
};

/// Event-driven dispatch. Vehicles are released in key order onto their first
/// node, then stamps are processed in increasing order: vehicles sitting at the
/// current stamp are grouped by next node and, within a group, take the
/// earliest separation-feasible slot in key order.
///
/// Hard deadlines are not consulted while scheduling; breaches show up in the
/// returned status. A vehicle whose travel window cannot be met still gets the
/// earliest free slot past the window and is flagged SlotWindowFailed.
inline DispatchResult run_dispatch(const Instance& inst, Mode mode,
                                   const DispatchOptions& opts = {}) {
  const int n = inst.vehicle_count();
  DispatchResult result;
  result.mode = mode;
  result.schedule.times.resize(n);
  result.status.assign(n, VehicleStatus::Completed);
  for (int j = 0; j < n; ++j) result.schedule.times[j].assign(inst.walk(j).size(), 0);

  std::vector<int> step(n, 0);  // index of the node each vehicle sits at
  EventQueue queue(inst);

  auto place = [&](int j, int i, Tick lower, Tick upper) {
    const StepRef who{j, i};
    const auto blockers = queue.blockers(who, lower);
    const Tick t = earliest_free_time(lower, blockers);
    if (!is_infinite(upper) && t > upper) result.status[j] = VehicleStatus::SlotWindowFailed;
    result.schedule.times[j][i] = t;
    step[j] = i;
    queue.assign(who, t, i + 1 < inst.walk(j).size());
  };

  std::vector<int> order(n);
  for (int j = 0; j < n; ++j) order[j] = j;
  std::vector<SortKey> keys(n);
  for (int j = 0; j < n; ++j)
    keys[j] = sorting_key({j, -1, inst.rho(j)}, mode, inst, opts.negative_slack);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return keys[a] < keys[b]; });
  for (int j : order) place(j, 0, inst.rho(j), kInfinity);

  while (!queue.empty()) {
    const Tick t = queue.front();
    std::size_t done = 0;
    // Zero-length links can add vehicles at t while t is being processed.
    while (done < queue.at(t).size()) {
      const std::vector<int> batch(queue.at(t).begin() + static_cast<long>(done),
                                   queue.at(t).end());
      done = queue.at(t).size();

      std::map<int, std::vector<int>> by_next_node;
      for (int j : batch)
        by_next_node[inst.walk(j).vertices[step[j] + 1]].push_back(j);

      for (auto& [node, group] : by_next_node) {
        std::vector<SortKey> group_keys;
        group_keys.reserve(group.size());
        for (int j : group)
          group_keys.push_back(
              sorting_key({j, step[j], t}, mode, inst, opts.negative_slack));
        std::sort(group_keys.begin(), group_keys.end());
        for (const SortKey& k : group_keys) {
          const int j = k.vehicle;
          const int i = step[j];
          const Walk& w = inst.walk(j);
          place(j, i + 1, t + w.tau_min[i], add_sat(t, w.tau_max[i]));
        }
      }
    }
    queue.pop_front();
  }

  for (int j = 0; j < n; ++j)
    if (result.status[j] == VehicleStatus::Completed && !is_infinite(inst.d_hard(j)) &&
        result.schedule.completion(j) > inst.d_hard(j))
      result.status[j] = VehicleStatus::HardDeadlineViolated;
  return result;
}

inline constexpr int mode_rank(Mode m) { return static_cast<int>(m); }

/// Runs all three modes and keeps the best: fewest slot-window failures, then
/// fewest hard-deadline breaches, then the instance objective, then mode order.
inline DispatchResult deadline_and_proximity(const Instance& inst,
                                             const DispatchOptions& opts = {}) {
  std::optional<DispatchResult> best;
  double best_value = 0;
  std::string failures;
  for (Mode m : kAllModes) {
    try {
      DispatchResult r = run_dispatch(inst, m, opts);
      const double value = evaluate(inst, r.schedule);
      const auto rank = [](const DispatchResult& x, double v) {
        return std::tuple{x.slot_window_failures(), x.hard_deadline_violations(), v,
                          mode_rank(x.mode)};
      };
      if (!best || rank(r, value) < rank(*best, best_value)) {
        best = std::move(r);
        best_value = value;
      }
    } catch (const std::exception& e) {
      failures += std::string(to_string(m)) + ": " + e.what() + "; ";
    }
  }
  if (!best) throw std::runtime_error("every dispatch mode failed: " + failures);
  return *best;
}

}  // namespace vsp::heuristics
