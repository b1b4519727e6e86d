#pragma once

// Big-M mixed-integer model for the (weighted) tardy count.
//
// For every separated pair (j1,i1) ~ (j2,i2) with gap s:
//   t_{j1}^{i1} - t_{j2}^{i2} = P - N
//   b s <= P <= b M,   (1 - b) s <= N <= (1 - b) M
// so b = 1 forces t_{j1}^{i1} >= t_{j2}^{i2} + s (the second step crosses
// first) and b = 0 forces the reverse.
//
// For every vehicle with a finite soft deadline d_j:
//   d_j - t_j^{q_j} <= X_j,  0 <= X_j,  X_j <= M_j (1 - l_j),
//   X_j <= d_j - t_j^{q_j} + M_j l_j
// which makes l_j = 1 exactly when t_j^{q_j} > d_j.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vsp/exact/branch_and_bound.hpp"
#include "vsp/exact/difference_constraints.hpp"
#include "vsp/instance.hpp"

namespace vsp::exact {

struct BigM {
  Tick horizon = 0;
  std::vector<Tick> pair;     // aligned with conflict_pairs(inst)
  std::vector<Tick> vehicle;  // 0 for vehicles without a soft deadline
};

/// M_pair = H - min(rho_j1, rho_j2) + max gap and M_j = max(H, d_j) - rho_j,
/// where H is the caller's horizon or else the largest hard deadline. Both
/// bound the absolute differences they gate once every t lies in [rho, H].
inline BigM big_m_values(const Instance& inst, std::optional<Tick> horizon = std::nullopt) {
  BigM m;
  if (horizon) {
    m.horizon = *horizon;
  } else {
    m.horizon = std::numeric_limits<Tick>::min();
    for (int j = 0; j < inst.vehicle_count(); ++j) {
      if (is_infinite(inst.d_hard(j)))
        throw ConfigError("vehicle " + std::to_string(j) +
                          " has no hard deadline, so big-M values are unbounded; "
                          "supply a horizon");
      m.horizon = std::max(m.horizon, inst.d_hard(j));
    }
    if (inst.vehicle_count() == 0) m.horizon = 0;
  }
  Tick max_gap = 0;
  for (const Separation& s : inst.separations()) max_gap = std::max(max_gap, s.gap);
  for (const ConflictPair& p : conflict_pairs(inst))
    m.pair.push_back(m.horizon -
                     std::min(inst.rho(p.first.vehicle), inst.rho(p.second.vehicle)) +
                     max_gap);
  for (int j = 0; j < inst.vehicle_count(); ++j) {
    const Tick d = inst.d_soft(j);
    m.vehicle.push_back(is_infinite(d) ? 0 : std::max(m.horizon, d) - inst.rho(j));
  }
  return m;
}

enum class VarType { Continuous, Binary };
enum class Sense { LessEqual, GreaterEqual, Equal };

struct MipVariable {
  std::string name;
  VarType type = VarType::Continuous;
  double lower = 0;
  double upper = std::numeric_limits<double>::infinity();

  friend bool operator==(const MipVariable&, const MipVariable&) = default;
};

struct Term {
  double coef = 0;
  std::string var;

  friend bool operator==(const Term&, const Term&) = default;
};

struct MipRow {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0;

  friend bool operator==(const MipRow&, const MipRow&) = default;
};

struct MipModel {
  std::vector<Term> objective;  // minimized
  std::vector<MipRow> rows;
  std::vector<MipVariable> variables;

  const MipVariable* find(const std::string& name) const {
    for (const auto& v : variables)
      if (v.name == name) return &v;
    return nullptr;
  }

  std::size_t count(VarType type) const {
    return static_cast<std::size_t>(std::count_if(
        variables.begin(), variables.end(), [&](const MipVariable& v) { return v.type == type; }));
  }

  /// Variables compare as a set keyed by name; rows and objective in order.
  friend bool operator==(const MipModel& a, const MipModel& b) {
    if (a.objective != b.objective || a.rows != b.rows ||
        a.variables.size() != b.variables.size())
      return false;
    auto sorted = [](std::vector<MipVariable> v) {
      std::sort(v.begin(), v.end(),
                [](const MipVariable& x, const MipVariable& y) { return x.name < y.name; });
      return v;
    };
    return sorted(a.variables) == sorted(b.variables);
  }
};

namespace mip_names {

inline std::string step(StepRef r) {
  return std::to_string(r.vehicle + 1) + "_" + std::to_string(r.step + 1);
}
inline std::string t(StepRef r) { return "t_" + step(r); }
inline std::string pair(const ConflictPair& p) { return step(p.first) + "_" + step(p.second); }
inline std::string b(const ConflictPair& p) { return "b_" + pair(p); }
inline std::string P(const ConflictPair& p) { return "P_" + pair(p); }
inline std::string N(const ConflictPair& p) { return "N_" + pair(p); }
inline std::string l(int j) { return "l_" + std::to_string(j + 1); }
inline std::string X(int j) { return "X_" + std::to_string(j + 1); }

}  // namespace mip_names

/// Variable names are t_j_i, P/N/b_j1_i1_j2_i2, l_j and X_j with 1-based
/// indices. Every t is bounded to [rho_j, min(d'_j, H)].
inline MipModel build_mip(const Instance& inst, std::optional<Tick> horizon = std::nullopt) {
  if (inst.objective() != ObjectiveKind::TardyCount &&
      inst.objective() != ObjectiveKind::WeightedTardyCount)
    throw ConfigError("MIP export supports tardy_count and weighted_tardy_count only");
  namespace nm = mip_names;
  const BigM m = big_m_values(inst, horizon);
  const auto pairs = conflict_pairs(inst);
  const auto as_d = [](Tick t) { return static_cast<double>(t); };
  MipModel model;

  for (int j = 0; j < inst.vehicle_count(); ++j) {
    const Walk& w = inst.walk(j);
    const Tick ub = std::min(inst.d_hard(j), m.horizon);
    for (int i = 0; i < w.size(); ++i)
      model.variables.push_back({nm::t({j, i}), VarType::Continuous, as_d(inst.rho(j)),
                                 as_d(ub)});
    for (int i = 0; i < w.links(); ++i) {
      const std::string a = nm::t({j, i}), b = nm::t({j, i + 1});
      const std::string suffix = std::to_string(j + 1) + "_" + std::to_string(i + 1);
      model.rows.push_back({"tmin_" + suffix, {{1, b}, {-1, a}}, Sense::GreaterEqual,
                            as_d(w.tau_min[i])});
      if (!is_infinite(w.tau_max[i]))
        model.rows.push_back({"tmax_" + suffix, {{1, b}, {-1, a}}, Sense::LessEqual,
                              as_d(w.tau_max[i])});
    }
  }

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const ConflictPair& p = pairs[k];
    const std::string P = nm::P(p), N = nm::N(p), b = nm::b(p), sfx = nm::pair(p);
    const double s = as_d(p.gap), M = as_d(m.pair[k]);
    model.variables.push_back({P, VarType::Continuous, 0, std::numeric_limits<double>::infinity()});
    model.variables.push_back({N, VarType::Continuous, 0, std::numeric_limits<double>::infinity()});
    model.variables.push_back({b, VarType::Binary, 0, 1});
    model.rows.push_back({"sep_abs_" + sfx,
                          {{1, nm::t(p.first)}, {-1, nm::t(p.second)}, {-1, P}, {1, N}},
                          Sense::Equal, 0});
    model.rows.push_back({"sep_p_lo_" + sfx, {{1, P}, {-s, b}}, Sense::GreaterEqual, 0});
    model.rows.push_back({"sep_p_hi_" + sfx, {{1, P}, {-M, b}}, Sense::LessEqual, 0});
    model.rows.push_back({"sep_n_lo_" + sfx, {{1, N}, {s, b}}, Sense::GreaterEqual, s});
    model.rows.push_back({"sep_n_hi_" + sfx, {{1, N}, {M, b}}, Sense::LessEqual, M});
  }

  for (int j = 0; j < inst.vehicle_count(); ++j) {
    const Tick d = inst.d_soft(j);
    if (is_infinite(d)) continue;
    const std::string X = nm::X(j), l = nm::l(j), sfx = std::to_string(j + 1);
    const std::string last = nm::t({j, inst.walk(j).size() - 1});
    const double Mj = as_d(m.vehicle[j]);
    model.variables.push_back({X, VarType::Continuous, 0, std::numeric_limits<double>::infinity()});
    model.variables.push_back({l, VarType::Binary, 0, 1});
    model.objective.push_back({inst.weight(j), l});
    model.rows.push_back({"late_gap_" + sfx, {{-1, last}, {-1, X}}, Sense::LessEqual, -as_d(d)});
    model.rows.push_back({"late_nonneg_" + sfx, {{1, X}}, Sense::GreaterEqual, 0});
    model.rows.push_back({"late_off_" + sfx, {{1, X}, {Mj, l}}, Sense::LessEqual, Mj});
    model.rows.push_back({"late_on_" + sfx, {{1, X}, {1, last}, {-Mj, l}}, Sense::LessEqual,
                          as_d(d)});
  }
  return model;
}

/// Turns binary values of an external MIP solution back into a schedule:
/// the orderings are fixed from b and the minimal times of that ordering
/// are returned. Missing or fractional b values round at 0.5.
inline std::optional<Schedule> schedule_from_mip_solution(
    const Instance& inst, const std::map<std::string, double>& values) {
  auto pairs = conflict_pairs(inst);
  for (ConflictPair& p : pairs) {
    const auto it = values.find(mip_names::b(p));
    const bool b = it != values.end() && it->second > 0.5;
    p.decision = b ? Decision::SecondAhead : Decision::FirstAhead;
  }
  const MinimalTimes m = minimal_times(decided_system(inst, pairs));
  if (!m.feasible) return std::nullopt;
  return m.schedule(inst);
}

}  // namespace vsp::exact
