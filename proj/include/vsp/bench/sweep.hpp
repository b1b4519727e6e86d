#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "vsp/exact/branch_and_bound.hpp"
#include "vsp/heuristics/dispatch.hpp"
#include "vsp/instances/grid.hpp"
#include "vsp/objective.hpp"
#include "vsp/validate.hpp"

namespace vsp::bench {

enum class Algorithm { Baseline, Heuristic, Exact };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Baseline: return "baseline";
    case Algorithm::Heuristic: return "heuristic";
    case Algorithm::Exact: return "exact";
  }
  return "unknown";
}

inline Algorithm algorithm_from_string(std::string_view s) {
  if (s == "baseline") return Algorithm::Baseline;
  if (s == "heuristic") return Algorithm::Heuristic;
  if (s == "exact") return Algorithm::Exact;
  throw ConfigError("unknown algorithm '" + std::string(s) + "'");
}

struct SweepConfig {
  gen::ExperimentConfig experiment;
  std::vector<int> vehicle_counts{25, 50, 75, 100};
  std::vector<Algorithm> algorithms{Algorithm::Baseline, Algorithm::Heuristic};
  double exact_time_limit_s = 3600;
  int exact_max_vehicles = 25;
};

/// One algorithm run on one generated instance at one deadline ratio.
struct RunRecord {
  int n = 0;
  int instance = 0;
  std::uint64_t seed = 0;
  double ratio = 0;
  Algorithm algorithm = Algorithm::Baseline;
  int tardy = 0;
  double runtime_s = 0;
  std::string status;  // "ok", hard-deadline/slot flags, or the exact status
};

struct TardyCell {
  int n = 0;
  double ratio = 0;
  Algorithm algorithm = Algorithm::Baseline;
  double mean_tardy_fraction = 0;
  double stderr_ = 0;
  int samples = 0;
};

struct RuntimeCell {
  int n = 0;
  Algorithm algorithm = Algorithm::Baseline;
  double mean_worst_runtime_s = 0;
  int samples = 0;
};

struct SweepResult {
  std::vector<TardyCell> tardy;
  std::vector<RuntimeCell> runtime;
  std::vector<RunRecord> runs;
};

/// Thrown when an emitted schedule breaks a constraint the algorithm promises
/// to respect. That is a defect, never data.
class ScheduleDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline std::uint64_t sweep_instance_seed(std::uint64_t seed, int n, int index) {
  return gen::instance_seed(seed, n * 100003 + index);
}

namespace detail {

inline void check_schedule(const Instance& inst, const Schedule& s, Algorithm a, int n,
                           int index, double ratio) {
  const auto report = validate_schedule(inst, s);
  for (const Violation& v : report.violations) {
    if (v.kind == ConstraintClass::HardDeadline && a != Algorithm::Exact) continue;
    throw ScheduleDefect(std::string(to_string(a)) + " produced an invalid schedule (n=" +
                         std::to_string(n) + ", instance " + std::to_string(index) +
                         ", ratio " + std::to_string(ratio) + "): " + v.describe());
  }
}

inline std::string dispatch_status(const heuristics::DispatchResult& r) {
  if (r.all_completed()) return "ok";
  std::string s;
  if (r.slot_window_failures()) s += "slot_window_failed=" + std::to_string(r.slot_window_failures());
  if (r.hard_deadline_violations()) {
    if (!s.empty()) s += ";";
    s += "hard_deadline_violated=" + std::to_string(r.hard_deadline_violations());
  }
  return s;
}

}  // namespace detail

inline SweepResult aggregate(const SweepConfig& cfg, std::vector<RunRecord> runs) {
  SweepResult out;
  std::map<std::tuple<int, double, Algorithm>, std::vector<double>> fractions;
  std::map<std::tuple<int, int, Algorithm>, double> worst;  // (n, instance, alg)
  for (const RunRecord& r : runs) {
    fractions[{r.n, r.ratio, r.algorithm}].push_back(static_cast<double>(r.tardy) / r.n);
    double& w = worst[{r.n, r.instance, r.algorithm}];
    w = std::max(w, r.runtime_s);
  }
  for (int n : cfg.vehicle_counts)
    for (Algorithm a : cfg.algorithms) {
      for (double ratio : cfg.experiment.soft_deadline_ratios) {
        const auto it = fractions.find({n, ratio, a});
        if (it == fractions.end()) continue;
        const auto& xs = it->second;
        double mean = 0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double var = 0;
        for (double x : xs) var += (x - mean) * (x - mean);
        const double se = xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) /
                                              std::sqrt(static_cast<double>(xs.size()))
                                        : 0.0;
        out.tardy.push_back({n, ratio, a, mean, se, static_cast<int>(xs.size())});
      }
      double sum = 0;
      int count = 0;
      for (const auto& [key, w] : worst)
        if (std::get<0>(key) == n && std::get<2>(key) == a) {
          sum += w;
          ++count;
        }
      if (count > 0) out.runtime.push_back({n, a, sum / count, count});
    }
  out.runs = std::move(runs);
  return out;
}

/// Generates every (n, instance, ratio) combination, runs the requested
/// algorithms, validates each schedule and aggregates tardy fractions and
/// worst-over-ratio runtimes. Timing covers the scheduling call only.
inline SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.experiment.validate();
  const bool wants_exact = std::find(cfg.algorithms.begin(), cfg.algorithms.end(),
                                     Algorithm::Exact) != cfg.algorithms.end();
  if (wants_exact && !(cfg.exact_time_limit_s > 0))
    throw ConfigError("the exact solver needs a positive time limit");

  using clock = std::chrono::steady_clock;
  std::vector<RunRecord> runs;
  for (int n : cfg.vehicle_counts) {
    gen::ExperimentConfig ec = cfg.experiment;
    ec.n_vehicles = n;
    for (int k = 0; k < ec.n_instances; ++k) {
      const std::uint64_t seed = sweep_instance_seed(ec.seed, n, k);
      for (double ratio : ec.soft_deadline_ratios) {
        const Instance inst = gen::generate_grid_instance(ec, ratio, seed);
        for (Algorithm a : cfg.algorithms) {
          RunRecord rec{n, k, seed, ratio, a, 0, 0, "ok"};
          Schedule schedule;
          const auto start = clock::now();
          if (a == Algorithm::Baseline) {
            auto r = heuristics::run_dispatch(inst, heuristics::Mode::Proximity);
            rec.runtime_s = std::chrono::duration<double>(clock::now() - start).count();
            rec.status = detail::dispatch_status(r);
            schedule = std::move(r.schedule);
          } else if (a == Algorithm::Heuristic) {
            auto r = heuristics::deadline_and_proximity(inst);
            rec.runtime_s = std::chrono::duration<double>(clock::now() - start).count();
            rec.status = detail::dispatch_status(r);
            schedule = std::move(r.schedule);
          } else {
            if (n > cfg.exact_max_vehicles) continue;
            exact::ExactOptions opts;
            opts.time_limit_s = cfg.exact_time_limit_s;
            auto r = exact::solve_exact(inst, opts);
            rec.runtime_s = std::chrono::duration<double>(clock::now() - start).count();
            rec.status = std::string(exact::to_string(r.status));
            if (!r.schedule) {
              runs.push_back(rec);
              continue;
            }
            schedule = std::move(*r.schedule);
          }
          detail::check_schedule(inst, schedule, a, n, k, ratio);
          rec.tardy = tardy_count(inst, schedule);
          runs.push_back(rec);
        }
      }
    }
  }
  // Runs without a schedule (exact infeasible/out of budget) stay in the raw
  // log but not in the means.
  std::vector<RunRecord> scored;
  for (const auto& r : runs)
    if (!(r.algorithm == Algorithm::Exact &&
          (r.status == "infeasible" || r.status == "budget_exhausted")))
      scored.push_back(r);
  SweepResult result = aggregate(cfg, scored);
  result.runs = std::move(runs);
  return result;
}

namespace detail {

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

}  // namespace detail

/// Writes tardy.csv and runtime.csv (plus runs.csv with every raw record).
/// Runtime columns are wall-clock and vary between runs.
inline void emit_csv(const SweepResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto out = detail::open_out(dir / "tardy.csv");
    out << "n,ratio,algorithm,mean_tardy_fraction,stderr\n";
    for (const TardyCell& c : result.tardy)
      out << c.n << "," << detail::fixed(c.ratio, 4) << "," << to_string(c.algorithm) << ","
          << detail::fixed(c.mean_tardy_fraction, 6) << "," << detail::fixed(c.stderr_, 6)
          << "\n";
    if (!out) throw std::runtime_error("write failed for tardy.csv");
  }
  {
    auto out = detail::open_out(dir / "runtime.csv");
    out << "n,algorithm,mean_worst_runtime_s\n";
    for (const RuntimeCell& c : result.runtime)
      out << c.n << "," << to_string(c.algorithm) << ","
          << detail::fixed(c.mean_worst_runtime_s, 9) << "\n";
    if (!out) throw std::runtime_error("write failed for runtime.csv");
  }
  {
    auto out = detail::open_out(dir / "runs.csv");
    out << "n,instance,seed,ratio,algorithm,tardy,runtime_s,status\n";
    for (const RunRecord& r : result.runs)
      out << r.n << "," << r.instance << "," << r.seed << "," << detail::fixed(r.ratio, 4)
          << "," << to_string(r.algorithm) << "," << r.tardy << ","
          << detail::fixed(r.runtime_s, 9) << "," << r.status << "\n";
    if (!out) throw std::runtime_error("write failed for runs.csv");
  }
}

inline nlohmann::json manifest(const SweepConfig& cfg) {
  const auto& e = cfg.experiment;
  nlohmann::json algs = nlohmann::json::array();
  for (Algorithm a : cfg.algorithms) algs.push_back(std::string(to_string(a)));
  return {{"grid", {{"rows", e.grid.rows}, {"cols", e.grid.cols},
                    {"bidirectional", e.grid.bidirectional}}},
          {"vehicle_counts", cfg.vehicle_counts},
          {"instances", e.n_instances},
          {"ratios", e.soft_deadline_ratios},
          {"separation", e.separation},
          {"tau_min", e.tau_min_link},
          {"tau_max", is_infinite(e.tau_max_link) ? nlohmann::json(nullptr)
                                                  : nlohmann::json(e.tau_max_link)},
          {"hard_deadline_factor", e.hard_deadline_factor},
          {"hard_deadline_per_vertex", e.hard_deadline_per_vertex},
          {"rho", 0},
          {"seed", e.seed},
          {"algorithms", algs},
          {"exact_time_limit_s", cfg.exact_time_limit_s},
          {"exact_max_vehicles", cfg.exact_max_vehicles},
          {"runtime_columns_deterministic", false}};
}

}  // namespace vsp::bench
