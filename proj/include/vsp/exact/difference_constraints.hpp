#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "vsp/instance.hpp"

namespace vsp::exact {

/// t_x - t_y >= c.
struct DifferenceConstraint {
  int x = 0;
  int y = 0;
  Tick c = 0;

  friend bool operator==(const DifferenceConstraint&, const DifferenceConstraint&) = default;
};

/// Constraints over one variable per time stamp plus an origin pinned at 0.
/// Variable 0 is the origin; step k of the instance is variable k + 1.
class DifferenceConstraintSystem {
 public:
  static constexpr int kOrigin = 0;

  explicit DifferenceConstraintSystem(int variable_count = 1)
      : variable_count_(variable_count) {}

  /// Request times, hard deadlines and link travel windows of `inst`.
  /// Separations are not included; decide them with `add_order`.
  static DifferenceConstraintSystem from_instance(const Instance& inst) {
    DifferenceConstraintSystem dcs(inst.step_count() + 1);
    for (int j = 0; j < inst.vehicle_count(); ++j) {
      const Walk& w = inst.walk(j);
      const int first = variable({j, 0}, inst);
      const int last = variable({j, w.size() - 1}, inst);
      dcs.add(first, kOrigin, inst.rho(j));
      if (!is_infinite(inst.d_hard(j))) dcs.add(kOrigin, last, -inst.d_hard(j));
      for (int i = 0; i < w.links(); ++i) {
        const int a = variable({j, i}, inst);
        dcs.add(a + 1, a, w.tau_min[i]);
        if (!is_infinite(w.tau_max[i])) dcs.add(a, a + 1, -w.tau_max[i]);
      }
    }
    return dcs;
  }

  static int variable(StepRef r, const Instance& inst) { return inst.step_index(r) + 1; }

  void add(int x, int y, Tick c) { constraints_.push_back({x, y, c}); }

  /// `before` passes its vertex at least `gap` ahead of `after`.
  void add_order(StepRef before, StepRef after, Tick gap, const Instance& inst) {
    add(variable(after, inst), variable(before, inst), gap);
  }

  /// Every vehicle's completion must be <= horizon.
  void add_horizon(Tick horizon, const Instance& inst) {
    for (int j = 0; j < inst.vehicle_count(); ++j)
      add(kOrigin, variable({j, inst.walk(j).size() - 1}, inst), -horizon);
  }

  int variable_count() const { return variable_count_; }
  const std::vector<DifferenceConstraint>& constraints() const { return constraints_; }

 private:
  int variable_count_;
  std::vector<DifferenceConstraint> constraints_;
};

struct MinimalTimes {
  bool feasible = false;
  std::vector<Tick> times;  // per variable, origin first; empty if infeasible
  std::vector<DifferenceConstraint> witness;  // positive cycle if infeasible

  /// Times rearranged per vehicle.
  Schedule schedule(const Instance& inst) const {
    Schedule s;
    s.times.resize(inst.vehicle_count());
    for (int j = 0; j < inst.vehicle_count(); ++j)
      for (int i = 0; i < inst.walk(j).size(); ++i)
        s.times[j].push_back(times[DifferenceConstraintSystem::variable({j, i}, inst)]);
    return s;
  }
};

/// Componentwise-minimal solution by longest paths from the origin
/// (Bellman-Ford). A positive cycle means infeasible; the cycle is returned
/// as the witness, its constants summing to a positive value.
inline MinimalTimes minimal_times(const DifferenceConstraintSystem& dcs) {
  constexpr Tick kUnreached = std::numeric_limits<Tick>::min();
  const int n = dcs.variable_count();
  const auto& cons = dcs.constraints();
  std::vector<Tick> dist(n, kUnreached);
  std::vector<int> pred(n, -1);  // index into cons
  dist[DifferenceConstraintSystem::kOrigin] = 0;

  int last_updated = -1;
  for (int round = 0; round < n; ++round) {
    last_updated = -1;
    for (int k = 0; k < static_cast<int>(cons.size()); ++k) {
      const auto& e = cons[k];
      if (dist[e.y] == kUnreached) continue;
      if (dist[e.y] + e.c > dist[e.x]) {
        dist[e.x] = dist[e.y] + e.c;
        pred[e.x] = k;
        last_updated = e.x;
      }
    }
    if (last_updated < 0) break;
  }

  MinimalTimes out;
  if (last_updated < 0 && dist[DifferenceConstraintSystem::kOrigin] == 0) {
    out.feasible = true;
    for (Tick& t : dist)
      if (t == kUnreached) t = 0;
    out.times = std::move(dist);
    return out;
  }

  // Walk predecessors n times to land on the cycle, then trace it once.
  int v = last_updated >= 0 ? last_updated : DifferenceConstraintSystem::kOrigin;
  for (int k = 0; k < n; ++k) {
    if (pred[v] < 0) return out;
    v = cons[pred[v]].y;
  }
  const int start = v;
  do {
    out.witness.push_back(cons[pred[v]]);
    v = cons[pred[v]].y;
  } while (v != start);
  std::reverse(out.witness.begin(), out.witness.end());
  return out;
}

/// Longest-path labels maintained under constraint insertion, with
/// checkpoints for backtracking search.
class IncrementalLongestPath {
 public:
  explicit IncrementalLongestPath(const DifferenceConstraintSystem& dcs,
                                  std::vector<Tick> minimal)
      : out_(dcs.variable_count()), dist_(std::move(minimal)) {
    for (const auto& e : dcs.constraints()) out_[e.y].push_back({e.x, e.c});
  }

  const std::vector<Tick>& times() const { return dist_; }
  Tick time(int var) const { return dist_[var]; }

  void checkpoint() { levels_.push_back({trail_.size(), edges_.size()}); }

  void rollback() {
    const auto [trail_size, edge_count] = levels_.back();
    levels_.pop_back();
    undo_to(trail_size, edge_count);
  }

  /// Adds t_x - t_y >= c. On a positive cycle the insertion is undone and
  /// false is returned.
  bool add(int x, int y, Tick c) {
    const std::size_t trail_size = trail_.size();
    const std::size_t edge_count = edges_.size();
    out_[y].push_back({x, c});
    edges_.push_back(y);
    if (dist_[y] + c <= dist_[x]) return true;
    if (x == DifferenceConstraintSystem::kOrigin || x == y) {
      undo_to(trail_size, edge_count);
      return false;
    }

    set(x, dist_[y] + c);
    queue_.clear();
    queue_.push_back(x);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const int u = queue_[head];
      for (const auto& [v, w] : out_[u]) {
        if (dist_[u] + w <= dist_[v]) continue;
        if (v == y || v == DifferenceConstraintSystem::kOrigin) {
          undo_to(trail_size, edge_count);
          return false;
        }
        set(v, dist_[u] + w);
        queue_.push_back(v);
      }
    }
    return true;
  }

 private:
  struct Arc {
    int to;
    Tick c;
  };

  void set(int v, Tick value) {
    trail_.push_back({v, dist_[v]});
    dist_[v] = value;
  }

  void undo_to(std::size_t trail_size, std::size_t edge_count) {
    while (trail_.size() > trail_size) {
      dist_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
    while (edges_.size() > edge_count) {
      out_[edges_.back()].pop_back();
      edges_.pop_back();
    }
  }

  std::vector<std::vector<Arc>> out_;
  std::vector<Tick> dist_;
  std::vector<std::pair<int, Tick>> trail_;
  std::vector<int> edges_;  // tails of added arcs, in insertion order
  std::vector<std::pair<std::size_t, std::size_t>> levels_;
  std::vector<int> queue_;
};

}  // namespace vsp::exact
