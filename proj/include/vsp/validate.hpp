#pragma once

#include <string>
#include <vector>

#include "vsp/instance.hpp"

namespace vsp {

enum class ConstraintClass {
  RequestTime,   // rho_j <= t_j^1
  Continuity,    // t_j^i <= t_j^{i+1}
  HardDeadline,  // t_j^{q_j} <= d'_j
  MinTravel,     // tau_min <= t_j^{i+1} - t_j^i
  MaxTravel,     // t_j^{i+1} - t_j^i <= tau_max
  Separation,    // |t_{j1}^{i1} - t_{j2}^{i2}| >= s
};

inline std::string_view to_string(ConstraintClass c) {
  switch (c) {
    case ConstraintClass::RequestTime: return "request_time";
    case ConstraintClass::Continuity: return "continuity";
    case ConstraintClass::HardDeadline: return "hard_deadline";
    case ConstraintClass::MinTravel: return "min_travel";
    case ConstraintClass::MaxTravel: return "max_travel";
    case ConstraintClass::Separation: return "separation";
  }
  return "unknown";
}

/// One broken constraint. Link constraints use `at.step` as the link index
/// (between steps i and i+1); separations also fill `other`.
struct Violation {
  ConstraintClass kind;
  StepRef at;
  StepRef other{-1, -1};

  std::string describe() const {
    std::string s(to_string(kind));
    s += " vehicle " + std::to_string(at.vehicle) + " step " + std::to_string(at.step);
    if (kind == ConstraintClass::Separation)
      s += " vs vehicle " + std::to_string(other.vehicle) + " step " +
           std::to_string(other.step);
    return s;
  }

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  std::size_t count(ConstraintClass kind) const {
    std::size_t n = 0;
    for (const auto& v : violations) n += v.kind == kind;
    return n;
  }

  /// True when nothing but hard-deadline breaches were found.
  bool ok_except_hard_deadlines() const {
    return violations.size() == count(ConstraintClass::HardDeadline);
  }
};

/// Checks every constraint of the instance against the schedule, exactly.
/// Throws ShapeError when the schedule does not fit the walks.
inline ValidationReport validate_schedule(const Instance& inst,
                                          const Schedule& sched) {
  require_shape(inst, sched);
  ValidationReport report;
  auto add = [&](ConstraintClass k, StepRef at, StepRef other = {-1, -1}) {
    report.violations.push_back({k, at, other});
  };

  for (int j = 0; j < inst.vehicle_count(); ++j) {
    const Walk& w = inst.walk(j);
    const auto& t = sched.times[j];
    if (t.front() < inst.rho(j)) add(ConstraintClass::RequestTime, {j, 0});
    for (int i = 0; i < w.links(); ++i) {
      const Tick dt = t[i + 1] - t[i];
      if (dt < 0) add(ConstraintClass::Continuity, {j, i});
      if (dt < w.tau_min[i]) add(ConstraintClass::MinTravel, {j, i});
      if (!is_infinite(w.tau_max[i]) && dt > w.tau_max[i])
        add(ConstraintClass::MaxTravel, {j, i});
    }
    if (!is_infinite(inst.d_hard(j)) && t.back() > inst.d_hard(j))
      add(ConstraintClass::HardDeadline, {j, w.size() - 1});
  }

  for (const Separation& s : inst.separations()) {
    const Tick a = sched.times[s.first.vehicle][s.first.step];
    const Tick b = sched.times[s.second.vehicle][s.second.step];
    const Tick diff = a > b ? a - b : b - a;
    if (diff < s.gap) add(ConstraintClass::Separation, s.first, s.second);
  }
  return report;
}

}  // namespace vsp
