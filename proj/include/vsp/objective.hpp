#pragma once

#include <algorithm>
#include <limits>
#include <numeric>

#include "vsp/instance.hpp"

namespace vsp {

/// Sum of tau_min over the walk: trip time with no other traffic.
inline Tick min_free_trip_time(const Instance& inst, int j) {
  const Walk& w = inst.walk(j);
  return std::accumulate(w.tau_min.begin(), w.tau_min.end(), Tick{0});
}

/// Per-vehicle quantities derived from completion C_j = t_j^{q_j}.
struct VehicleMetrics {
  Tick completion = 0;
  double lateness = 0;  // -inf when d_soft is unbounded
  Tick tardiness = 0;
  bool tardy = false;
};

inline VehicleMetrics vehicle_metrics(const Instance& inst, const Schedule& sched,
                                      int j) {
  VehicleMetrics m;
  m.completion = sched.completion(j);
  const Tick d = inst.d_soft(j);
  if (is_infinite(d)) {
    m.lateness = -std::numeric_limits<double>::infinity();
    return m;
  }
  m.lateness = static_cast<double>(m.completion - d);
  m.tardiness = std::max<Tick>(0, m.completion - d);
  m.tardy = m.completion > d;
  return m;
}

inline double evaluate(const Instance& inst, const Schedule& sched,
                       ObjectiveKind kind) {
  require_shape(inst, sched);
  if (is_weighted(kind) && !inst.weights())
    throw ConfigError("objective " + std::string(to_string(kind)) +
                      " needs instance weights");
  const int n = inst.vehicle_count();
  double total = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    const VehicleMetrics m = vehicle_metrics(inst, sched, j);
    switch (kind) {
      case ObjectiveKind::Makespan:
        worst = std::max(worst, static_cast<double>(m.completion));
        break;
      case ObjectiveKind::TotalCompletion:
        total += static_cast<double>(m.completion);
        break;
      case ObjectiveKind::TotalWeightedCompletion:
        total += inst.weight(j) * static_cast<double>(m.completion);
        break;
      case ObjectiveKind::MaxLateness:
        worst = std::max(worst, m.lateness);
        break;
      case ObjectiveKind::TotalTardiness:
        total += static_cast<double>(m.tardiness);
        break;
      case ObjectiveKind::TardyCount:
        total += m.tardy ? 1.0 : 0.0;
        break;
      case ObjectiveKind::WeightedTardyCount:
        total += m.tardy ? inst.weight(j) : 0.0;
        break;
    }
  }
  if (kind == ObjectiveKind::Makespan || kind == ObjectiveKind::MaxLateness)
    return n == 0 ? 0.0 : worst;
  return total;
}

inline double evaluate(const Instance& inst, const Schedule& sched) {
  return evaluate(inst, sched, inst.objective());
}

inline int tardy_count(const Instance& inst, const Schedule& sched) {
  return static_cast<int>(evaluate(inst, sched, ObjectiveKind::TardyCount));
}

}  // namespace vsp
