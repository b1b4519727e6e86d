#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vsp/errors.hpp"
#include "vsp/time.hpp"

namespace vsp {

enum class ObjectiveKind {
  Makespan,
  TotalCompletion,
  TotalWeightedCompletion,
  MaxLateness,
  TotalTardiness,
  TardyCount,
  WeightedTardyCount,
};

inline constexpr std::array<std::pair<ObjectiveKind, std::string_view>, 7>
    kObjectiveNames{{
        {ObjectiveKind::Makespan, "makespan"},
        {ObjectiveKind::TotalCompletion, "total_completion"},
        {ObjectiveKind::TotalWeightedCompletion, "total_weighted_completion"},
        {ObjectiveKind::MaxLateness, "max_lateness"},
        {ObjectiveKind::TotalTardiness, "total_tardiness"},
        {ObjectiveKind::TardyCount, "tardy_count"},
        {ObjectiveKind::WeightedTardyCount, "weighted_tardy_count"},
    }};

inline std::string_view to_string(ObjectiveKind kind) {
  for (const auto& [k, name] : kObjectiveNames)
    if (k == kind) return name;
  return "unknown";
}

inline ObjectiveKind objective_from_string(std::string_view name) {
  for (const auto& [k, n] : kObjectiveNames)
    if (n == name) return k;
  throw InstanceError("unknown objective '" + std::string(name) + "'");
}

constexpr bool is_weighted(ObjectiveKind kind) {
  return kind == ObjectiveKind::TotalWeightedCompletion ||
         kind == ObjectiveKind::WeightedTardyCount;
}

/// One step of one vehicle: the `step`-th vertex of walk `vehicle` (0-based).
struct StepRef {
  int vehicle = 0;
  int step = 0;

  friend constexpr auto operator<=>(const StepRef&, const StepRef&) = default;
};

class Graph {
 public:
  Graph() = default;

  /// Directed graph on vertices [0, vertex_count). Duplicate edges collapse;
  /// self-loops and disconnected graphs are rejected.
  Graph(int vertex_count, std::vector<std::pair<int, int>> edges)
      : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ < 1) throw InstanceError("graph needs at least one vertex");
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    successors_.assign(vertex_count_, {});
    for (const auto& [u, v] : edges_) {
      if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_)
        throw InstanceError("edge (" + std::to_string(u) + "," +
                            std::to_string(v) + ") references a missing vertex");
      if (u == v)
        throw InstanceError("self-loop on vertex " + std::to_string(u));
      successors_[u].push_back(v);
    }
    check_weakly_connected();
  }

  int vertex_count() const { return vertex_count_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& successors(int u) const { return successors_.at(u); }

  bool has_edge(int u, int v) const {
    return std::binary_search(edges_.begin(), edges_.end(), std::pair{u, v});
  }

  int max_out_degree() const {
    std::size_t d = 0;
    for (const auto& s : successors_) d = std::max(d, s.size());
    return static_cast<int>(d);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  void check_weakly_connected() const {
    std::vector<int> parent(vertex_count_);
    for (int v = 0; v < vertex_count_; ++v) parent[v] = v;
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    int components = vertex_count_;
    for (const auto& [u, v] : edges_) {
      const int a = find(u), b = find(v);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    if (components != 1) throw InstanceError("graph is not connected");
  }

  int vertex_count_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> successors_;
};

struct Walk {
  std::vector<int> vertices;
  std::vector<Tick> tau_min;  // one per link
  std::vector<Tick> tau_max;  // kInfinity when unbounded

  int size() const { return static_cast<int>(vertices.size()); }
  int links() const { return size() - 1; }

  friend bool operator==(const Walk&, const Walk&) = default;
};

/// Minimum separation between two steps of distinct vehicles at one vertex.
struct Separation {
  StepRef first;
  StepRef second;
  Tick gap = 0;

  friend bool operator==(const Separation&, const Separation&) = default;
};

/// Raw instance fields. Build an `Instance` from it to get validation and
/// the derived lookup tables.
struct InstanceData {
  Graph graph;
  std::vector<Walk> walks;
  std::vector<Tick> rho;
  std::vector<Tick> d_soft;
  std::vector<Tick> d_hard;
  std::vector<Separation> separations;
  ObjectiveKind objective = ObjectiveKind::TardyCount;
  std::optional<std::vector<double>> weights;
  TimeScale scale;
};

class Instance {
 public:
  Instance() = default;

  explicit Instance(InstanceData data) : data_(std::move(data)) {
    validate_fields();
    index_steps();
    index_separations();
  }

  const InstanceData& data() const { return data_; }
  const Graph& graph() const { return data_.graph; }
  int vehicle_count() const { return static_cast<int>(data_.walks.size()); }
  const Walk& walk(int j) const { return data_.walks.at(j); }
  const std::vector<Walk>& walks() const { return data_.walks; }
  Tick rho(int j) const { return data_.rho.at(j); }
  Tick d_soft(int j) const { return data_.d_soft.at(j); }
  Tick d_hard(int j) const { return data_.d_hard.at(j); }
  ObjectiveKind objective() const { return data_.objective; }
  const std::optional<std::vector<double>>& weights() const {
    return data_.weights;
  }
  double weight(int j) const { return data_.weights ? (*data_.weights)[j] : 1.0; }
  const TimeScale& scale() const { return data_.scale; }

  /// Canonical separations, one per unordered pair, `first < second`.
  const std::vector<Separation>& separations() const {
    return data_.separations;
  }

  /// Total number of time stamps q.
  int step_count() const { return static_cast<int>(step_refs_.size()); }
  int step_index(StepRef r) const { return offsets_[r.vehicle] + r.step; }
  StepRef step_ref(int index) const { return step_refs_[index]; }
  int vertex_at(StepRef r) const { return data_.walks[r.vehicle].vertices[r.step]; }

  /// Every step that visits vertex `v`, ordered by (vehicle, step).
  const std::vector<StepRef>& visits(int v) const { return visits_.at(v); }

  /// Separation between two steps, if one is defined. Symmetric.
  std::optional<Tick> separation(StepRef a, StepRef b) const {
    const auto it = gap_.find(pair_key(step_index(a), step_index(b)));
    if (it == gap_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    const auto& x = a.data_;
    const auto& y = b.data_;
    return x.graph == y.graph && x.walks == y.walks && x.rho == y.rho &&
           x.d_soft == y.d_soft && x.d_hard == y.d_hard &&
           x.separations == y.separations && x.objective == y.objective &&
           x.weights == y.weights &&
           x.scale.ticks_per_unit == y.scale.ticks_per_unit;
  }

 private:
  static std::uint64_t pair_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }

  void validate_fields() const {
    const auto n = data_.walks.size();
    if (data_.rho.size() != n || data_.d_soft.size() != n ||
        data_.d_hard.size() != n)
      throw InstanceError("rho, d_soft and d_hard need one entry per walk (" +
                          std::to_string(n) + ")");
    if (data_.scale.ticks_per_unit < 1)
      throw InstanceError("ticks_per_unit must be positive");
    for (std::size_t j = 0; j < n; ++j) {
      const Walk& w = data_.walks[j];
      const std::string who = "walk " + std::to_string(j);
      if (w.vertices.empty()) throw InstanceError(who + " is empty");
      if (w.tau_min.size() != w.vertices.size() - 1 ||
          w.tau_max.size() != w.vertices.size() - 1)
        throw InstanceError(who + ": tau_min/tau_max length must be q_j - 1 = " +
                            std::to_string(w.vertices.size() - 1));
      for (int v : w.vertices)
        if (v < 0 || v >= data_.graph.vertex_count())
          throw InstanceError(who + " visits missing vertex " + std::to_string(v));
      for (std::size_t i = 0; i + 1 < w.vertices.size(); ++i) {
        if (!data_.graph.has_edge(w.vertices[i], w.vertices[i + 1]))
          throw InstanceError(who + ": (" + std::to_string(w.vertices[i]) + "," +
                              std::to_string(w.vertices[i + 1]) +
                              ") is not an edge");
        if (w.tau_min[i] < 0 || is_infinite(w.tau_min[i]))
          throw InstanceError(who + ": tau_min must be finite and nonnegative");
        if (w.tau_min[i] > w.tau_max[i])
          throw InstanceError(who + ": tau_min exceeds tau_max on link " +
                              std::to_string(i));
      }
      if (is_infinite(data_.rho[j]))
        throw InstanceError(who + ": request time must be finite");
      if (!(data_.rho[j] <= data_.d_soft[j] && data_.d_soft[j] <= data_.d_hard[j]))
        throw InstanceError(who + ": need rho <= d_soft <= d_hard");
    }
    if (data_.weights) {
      if (data_.weights->size() != n)
        throw InstanceError("weights need one entry per walk");
      for (double w : *data_.weights)
        if (!(w > 0)) throw InstanceError("weights must be positive");
    } else if (is_weighted(data_.objective)) {
      throw InstanceError("objective " + std::string(to_string(data_.objective)) +
                          " requires weights");
    }
  }

  void index_steps() {
    offsets_.clear();
    step_refs_.clear();
    visits_.assign(data_.graph.vertex_count(), {});
    for (int j = 0; j < vehicle_count(); ++j) {
      offsets_.push_back(static_cast<int>(step_refs_.size()));
      for (int i = 0; i < data_.walks[j].size(); ++i) {
        step_refs_.push_back({j, i});
        visits_[data_.walks[j].vertices[i]].push_back({j, i});
      }
    }
  }

  // Collapses mirrored entries and re-emits the list in canonical order.
  void index_separations() {
    gap_.clear();
    for (const Separation& s : data_.separations) {
      for (const StepRef& r : {s.first, s.second})
        if (r.vehicle < 0 || r.vehicle >= vehicle_count() || r.step < 0 ||
            r.step >= data_.walks[r.vehicle].size())
          throw InstanceError("separation references a missing step");
      if (s.first.vehicle == s.second.vehicle)
        throw InstanceError("separation must relate two distinct vehicles");
      if (vertex_at(s.first) != vertex_at(s.second))
        throw InstanceError(
            "separation (" + std::to_string(s.first.vehicle) + "," +
            std::to_string(s.first.step) + "," + std::to_string(s.second.vehicle) +
            "," + std::to_string(s.second.step) +
            ") is defined only if the two vertices are identical");
      if (s.gap < 0 || is_infinite(s.gap))
        throw InstanceError("separation must be finite and nonnegative");
      const auto key = pair_key(step_index(s.first), step_index(s.second));
      const auto [it, inserted] = gap_.emplace(key, s.gap);
      if (!inserted && it->second != s.gap)
        throw InstanceError("asymmetric separation values for one pair");
    }
    std::vector<Separation> canonical;
    canonical.reserve(gap_.size());
    for (const auto& [key, gap] : gap_)
      canonical.push_back({step_refs_[key >> 32],
                           step_refs_[key & 0xffffffffu], gap});
    std::sort(canonical.begin(), canonical.end(),
              [](const Separation& a, const Separation& b) {
                return std::pair{a.first, a.second} < std::pair{b.first, b.second};
              });
    data_.separations = std::move(canonical);
  }

  InstanceData data_;
  std::vector<int> offsets_;
  std::vector<StepRef> step_refs_;
  std::vector<std::vector<StepRef>> visits_;
  std::unordered_map<std::uint64_t, Tick> gap_;
};

/// Arrival time stamps t_j^i, one row per vehicle.
struct Schedule {
  std::vector<std::vector<Tick>> times;

  Tick completion(int j) const { return times.at(j).back(); }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

inline bool shape_matches(const Instance& inst, const Schedule& sched) {
  if (static_cast<int>(sched.times.size()) != inst.vehicle_count()) return false;
  for (int j = 0; j < inst.vehicle_count(); ++j)
    if (static_cast<int>(sched.times[j].size()) != inst.walk(j).size()) return false;
  return true;
}

inline void require_shape(const Instance& inst, const Schedule& sched) {
  if (!shape_matches(inst, sched))
    throw ShapeError("schedule shape does not match the instance's walks");
}

}  // namespace vsp
