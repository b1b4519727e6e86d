#pragma once

#include <chrono>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "vsp/exact/difference_constraints.hpp"
#include "vsp/heuristics/dispatch.hpp"
#include "vsp/instance.hpp"
#include "vsp/objective.hpp"
#include "vsp/validate.hpp"

namespace vsp::exact {

enum class Decision { Unset, FirstAhead, SecondAhead };

/// A separated pair of steps at one vertex. `FirstAhead` means
/// t_second - t_first >= gap.
struct ConflictPair {
  StepRef first;
  StepRef second;
  Tick gap = 0;
  Decision decision = Decision::Unset;
};

/// One pair per canonical separation; zero gaps impose nothing and are left out.
inline std::vector<ConflictPair> conflict_pairs(const Instance& inst) {
  std::vector<ConflictPair> pairs;
  for (const Separation& s : inst.separations())
    if (s.gap > 0) pairs.push_back({s.first, s.second, s.gap, Decision::Unset});
  return pairs;
}

/// Fixed-ordering relaxation: base constraints plus every decided pair.
inline DifferenceConstraintSystem decided_system(const Instance& inst,
                                                 const std::vector<ConflictPair>& pairs) {
  auto dcs = DifferenceConstraintSystem::from_instance(inst);
  for (const ConflictPair& p : pairs) {
    if (p.decision == Decision::FirstAhead) dcs.add_order(p.first, p.second, p.gap, inst);
    if (p.decision == Decision::SecondAhead) dcs.add_order(p.second, p.first, p.gap, inst);
  }
  return dcs;
}

enum class ExactStatus { Optimal, FeasibleIncumbent, Infeasible, BudgetExhausted };

inline std::string_view to_string(ExactStatus s) {
  switch (s) {
    case ExactStatus::Optimal: return "optimal";
    case ExactStatus::FeasibleIncumbent: return "feasible_incumbent";
    case ExactStatus::Infeasible: return "infeasible";
    case ExactStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

/// Search-tree event, reported when a node is entered.
struct NodeTrace {
  long id = 0;
  long parent = -1;
  double bound = 0;
  bool leaf = false;  // all separations hold at the node's minimal times
};

struct ExactOptions {
  double time_limit_s = 60.0;
  long node_limit = std::numeric_limits<long>::max();
  /// Seed the incumbent from the dispatch heuristic's orderings.
  bool warm_start = true;
  /// Disable bound pruning (testing aid: explores every reachable ordering).
  bool prune = true;
  /// Extra cap on every completion time.
  std::optional<Tick> horizon;
  std::function<void(const NodeTrace&)> on_node;
};

struct ExactResult {
  ExactStatus status = ExactStatus::BudgetExhausted;
  std::optional<Schedule> schedule;
  double objective = std::numeric_limits<double>::infinity();
  long nodes = 0;
  std::vector<DifferenceConstraint> witness;
};

namespace detail {

class Search {
 public:
  Search(const Instance& inst, const ExactOptions& opts, bool any_feasible)
      : inst_(inst), opts_(opts), any_feasible_(any_feasible),
        pairs_(conflict_pairs(inst)), base_(DifferenceConstraintSystem::from_instance(inst)),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(opts.time_limit_s))) {
    if (opts_.horizon) base_.add_horizon(*opts_.horizon, inst_);
    for (int j = 0; j < inst_.vehicle_count(); ++j)
      last_var_.push_back(
          DifferenceConstraintSystem::variable({j, inst_.walk(j).size() - 1}, inst_));
  }

  ExactResult run() {
    ExactResult result;
    const MinimalTimes root = minimal_times(base_);
    if (!root.feasible) {
      result.status = ExactStatus::Infeasible;
      result.witness = root.witness;
      result.nodes = 0;
      return result;
    }
    lp_.emplace(base_, root.times);
    if (opts_.warm_start && !any_feasible_) warm_start();
    dfs(-1);

    result.nodes = nodes_;
    if (best_times_) {
      result.schedule = to_schedule(*best_times_);
      result.objective = best_value_;
      result.status = aborted_ ? ExactStatus::FeasibleIncumbent : ExactStatus::Optimal;
    } else {
      result.status = aborted_ ? ExactStatus::BudgetExhausted : ExactStatus::Infeasible;
    }
    return result;
  }

 private:
  double value_at(const std::vector<Tick>& times) const {
    double v = 0;
    for (int j = 0; j < inst_.vehicle_count(); ++j) {
      const Tick d = inst_.d_soft(j);
      if (!is_infinite(d) && times[last_var_[j]] > d) v += inst_.weight(j);
    }
    return v;
  }

  Schedule to_schedule(const std::vector<Tick>& times) const {
    MinimalTimes m;
    m.feasible = true;
    m.times = times;
    return m.schedule(inst_);
  }

  void offer(const std::vector<Tick>& times, double value) {
    if (best_times_ && value >= best_value_ - 1e-9) return;
    best_times_ = times;
    best_value_ = value;
  }

  // Orders every pair the way a heuristic schedule crosses it; its minimal
  // times are then a feasible incumbent no worse than the heuristic.
  void warm_start() {
    const auto heur = heuristics::deadline_and_proximity(inst_);
    const Schedule& s = heur.schedule;
    if (!validate_schedule(inst_, s).ok()) return;
    if (opts_.horizon)
      for (int j = 0; j < inst_.vehicle_count(); ++j)
        if (s.completion(j) > *opts_.horizon) return;
    auto pairs = pairs_;
    for (ConflictPair& p : pairs)
      p.decision = s.times[p.first.vehicle][p.first.step] <
                           s.times[p.second.vehicle][p.second.step]
                       ? Decision::FirstAhead
                       : Decision::SecondAhead;
    auto dcs = decided_system(inst_, pairs);
    if (opts_.horizon) dcs.add_horizon(*opts_.horizon, inst_);
    const MinimalTimes m = minimal_times(dcs);
    if (m.feasible) offer(m.times, value_at(m.times));
  }

  bool out_of_budget() {
    if (aborted_) return true;
    if (nodes_ >= opts_.node_limit || std::chrono::steady_clock::now() > deadline_)
      aborted_ = true;
    return aborted_;
  }

  void dfs(long parent) {
    if (out_of_budget()) return;
    const long id = nodes_++;
    const auto& t = lp_->times();
    const double bound = any_feasible_ ? 0.0 : value_at(t);

    // Most urgent unsatisfied pair: earliest involved minimal time.
    int pick = -1;
    Tick pick_time = 0;
    for (int k = 0; k < static_cast<int>(pairs_.size()); ++k) {
      const Tick a = t[DifferenceConstraintSystem::variable(pairs_[k].first, inst_)];
      const Tick b = t[DifferenceConstraintSystem::variable(pairs_[k].second, inst_)];
      const Tick diff = a > b ? a - b : b - a;
      if (diff >= pairs_[k].gap) continue;
      const Tick when = std::min(a, b);
      if (pick < 0 || when < pick_time) {
        pick = k;
        pick_time = when;
      }
    }
    if (opts_.on_node) opts_.on_node({id, parent, bound, pick < 0});
    if (opts_.prune && best_times_ && bound >= best_value_ - 1e-9) return;
    if (pick < 0) {
      offer(t, bound);
      if (any_feasible_) found_any_ = true;
      return;
    }

    const ConflictPair& p = pairs_[pick];
    const int a = DifferenceConstraintSystem::variable(p.first, inst_);
    const int b = DifferenceConstraintSystem::variable(p.second, inst_);
    const bool first_leads = t[a] <= t[b];
    for (int branch = 0; branch < 2; ++branch) {
      if (found_any_ || aborted_) return;
      const bool first_ahead = (branch == 0) == first_leads;
      lp_->checkpoint();
      const bool ok = first_ahead ? lp_->add(b, a, p.gap) : lp_->add(a, b, p.gap);
      if (ok) dfs(id);
      lp_->rollback();
    }
  }

  const Instance& inst_;
  const ExactOptions& opts_;
  bool any_feasible_;
  std::vector<ConflictPair> pairs_;
  DifferenceConstraintSystem base_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<int> last_var_;
  std::optional<IncrementalLongestPath> lp_;
  std::optional<std::vector<Tick>> best_times_;
  double best_value_ = std::numeric_limits<double>::infinity();
  long nodes_ = 0;
  bool aborted_ = false;
  bool found_any_ = false;
};

}  // namespace detail

/// Branch-and-bound over separation orderings for the (weighted) tardy count.
///
/// Each node holds the componentwise-minimal times of its partial ordering.
/// Tardiness is nondecreasing in completion time, so the objective at those
/// times bounds every completion of the node from below. When the minimal
/// times already separate every pair they form the best schedule of the
/// subtree and the node closes as a leaf.
inline ExactResult solve_exact(const Instance& inst, const ExactOptions& opts = {}) {
  if (inst.objective() != ObjectiveKind::TardyCount &&
      inst.objective() != ObjectiveKind::WeightedTardyCount)
    throw ConfigError("exact solver supports tardy_count and weighted_tardy_count only");
  return detail::Search(inst, opts, false).run();
}

/// Any schedule satisfying every constraint (and the optional horizon).
inline ExactResult find_feasible(const Instance& inst, const ExactOptions& opts = {}) {
  auto r = detail::Search(inst, opts, true).run();
  if (r.schedule) r.objective = 0;
  return r;
}

struct MakespanResult {
  bool optimal = false;
  Tick makespan = 0;
  std::optional<Schedule> schedule;
};

/// Minimum makespan by bisection on a completion-time horizon, each probe a
/// feasibility search. The upper end comes from the proximity dispatch.
inline MakespanResult solve_min_makespan(const Instance& inst, const ExactOptions& opts = {}) {
  MakespanResult out;
  const MinimalTimes root = minimal_times(DifferenceConstraintSystem::from_instance(inst));
  if (!root.feasible) return out;
  Tick lo = std::numeric_limits<Tick>::min();
  for (int j = 0; j < inst.vehicle_count(); ++j)
    lo = std::max(lo, root.times[DifferenceConstraintSystem::variable(
                          {j, inst.walk(j).size() - 1}, inst)]);

  ExactOptions probe = opts;
  probe.warm_start = false;
  probe.on_node = nullptr;
  auto feasible_at = [&](Tick h) {
    probe.horizon = h;
    return find_feasible(inst, probe);
  };

  const auto heur = heuristics::run_dispatch(inst, heuristics::Mode::Proximity);
  Tick hi = std::numeric_limits<Tick>::min();
  std::optional<Schedule> best;
  if (validate_schedule(inst, heur.schedule).ok()) {
    for (int j = 0; j < inst.vehicle_count(); ++j)
      hi = std::max(hi, heur.schedule.completion(j));
    best = heur.schedule;
  } else {
    auto r = find_feasible(inst, [&] { auto o = opts; o.warm_start = false; return o; }());
    if (!r.schedule) return out;
    for (int j = 0; j < inst.vehicle_count(); ++j) hi = std::max(hi, r.schedule->completion(j));
    best = r.schedule;
  }

  bool exact = true;
  while (lo < hi) {
    const Tick mid = lo + (hi - lo) / 2;
    auto r = feasible_at(mid);
    if (r.schedule) {
      hi = std::numeric_limits<Tick>::min();
      for (int j = 0; j < inst.vehicle_count(); ++j) hi = std::max(hi, r.schedule->completion(j));
      best = r.schedule;
    } else {
      if (r.status != ExactStatus::Infeasible) exact = false;
      lo = mid + 1;
    }
  }
  out.optimal = exact;
  out.makespan = hi;
  out.schedule = best;
  return out;
}

}  // namespace vsp::exact
