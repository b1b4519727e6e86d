// Command-line front end: schedule, solve, export-mip, generate, reduce-jsp,
// bench and validate.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vsp/vsp.hpp"

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kHardDeadlineViolated = 2;
constexpr int kSlotWindowFailed = 3;
constexpr int kBudgetIncumbent = 4;
constexpr int kInfeasible = 5;
constexpr int kBudgetNoSolution = 6;

vsp::gen::GridSpec parse_grid(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw CLI::ValidationError("--grid", "expected RxC, e.g. 5x5");
  vsp::gen::GridSpec g;
  g.rows = std::stoi(s.substr(0, x));
  g.cols = std::stoi(s.substr(x + 1));
  return g;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

// "1.0:2.0:0.1" or "1.0,1.5,2.0".
std::vector<double> parse_ratios(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() == 3) {
    const double lo = std::stod(parts[0]), hi = std::stod(parts[1]), step = std::stod(parts[2]);
    if (!(step > 0)) throw CLI::ValidationError("--ratios", "step must be positive");
    std::vector<double> out;
    for (int k = 0;; ++k) {
      const double r = std::round((lo + k * step) * 1e9) / 1e9;
      if (r > hi + 1e-9) break;
      out.push_back(r);
    }
    return out;
  }
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(std::stod(p));
  return out;
}

int exit_code(const vsp::heuristics::DispatchResult& r) {
  if (r.slot_window_failures() > 0) return kSlotWindowFailed;
  if (r.hard_deadline_violations() > 0) return kHardDeadlineViolated;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vehicle scheduling toolkit"};
  app.require_subcommand(1);

  // schedule
  auto* sched = app.add_subcommand("schedule", "Run the dispatch heuristics");
  std::string instance_path, out_path, mode = "best", negative = "prose";
  sched->add_option("--instance", instance_path)->required();
  sched->add_option("--mode", mode)->check(CLI::IsMember({"proximity", "abs", "rel", "best"}));
  sched->add_option("--out", out_path)->required();
  sched->add_option("--negative-slack", negative)->check(CLI::IsMember({"prose", "pseudocode"}));

  // solve
  auto* solve = app.add_subcommand("solve", "Exact branch-and-bound (tardy count or makespan)");
  bool exact_flag = false;
  double time_limit = 60;
  std::optional<double> horizon;
  solve->add_option("--instance", instance_path)->required();
  solve->add_flag("--exact", exact_flag)->required();
  solve->add_option("--time-limit", time_limit, "seconds");
  solve->add_option("--horizon", horizon, "cap on completion times, in instance units");
  solve->add_option("--out", out_path)->required();

  // export-mip
  auto* mip = app.add_subcommand("export-mip", "Write the big-M MIP as an LP file");
  mip->add_option("--instance", instance_path)->required();
  mip->add_option("--horizon", horizon, "big-M horizon, in instance units");
  mip->add_option("--out", out_path)->required();

  // generate
  auto* generate = app.add_subcommand("generate", "Random grid instance");
  std::string grid = "5x5";
  int vehicles = 25;
  double ratio = 1.5, hard_factor = 2.2;
  std::uint64_t seed = 42;
  long long separation = 5, tau_min = 50;
  bool hard_per_vertex = false;
  generate->add_option("--grid", grid);
  generate->add_option("--vehicles", vehicles);
  generate->add_option("--ratio", ratio);
  generate->add_option("--seed", seed);
  generate->add_option("--separation", separation);
  generate->add_option("--tau-min", tau_min);
  generate->add_option("--hard-factor", hard_factor);
  generate->add_flag("--hard-per-vertex", hard_per_vertex,
                     "hard deadline = factor * q_j * tau_min (vertex count)");
  generate->add_option("--out", out_path)->required();

  // reduce-jsp
  auto* reduce = app.add_subcommand("reduce-jsp", "Convert a unit job shop to an instance");
  std::string jsp_path;
  reduce->add_option("--jsp", jsp_path)->required();
  reduce->add_option("--out", out_path)->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Deadline-ratio sweep over random grids");
  std::string vehicle_list = "25,50,75,100", ratios = "1.0:2.0:0.1",
              algorithms = "baseline,heuristic", out_dir;
  int instances = 20, exact_max = 25;
  double exact_limit = 3600;
  bench->add_option("--grid", grid);
  bench->add_option("--vehicles", vehicle_list);
  bench->add_option("--instances", instances);
  bench->add_option("--ratios", ratios);
  bench->add_option("--algorithms", algorithms);
  bench->add_option("--seed", seed);
  bench->add_option("--exact-time-limit", exact_limit, "seconds per exact run");
  bench->add_option("--exact-max-vehicles", exact_max);
  bench->add_flag("--hard-per-vertex", hard_per_vertex);
  bench->add_option("--out-dir", out_dir)->required();

  // validate
  auto* validate = app.add_subcommand("validate", "Check a schedule against an instance");
  std::string schedule_path;
  validate->add_option("--instance", instance_path)->required();
  validate->add_option("--schedule", schedule_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sched) {
      const auto inst = vsp::io::read_instance(instance_path);
      vsp::heuristics::DispatchOptions opts;
      opts.negative_slack = negative == "prose" ? vsp::heuristics::NegativeSlack::LowestPriority
                                                : vsp::heuristics::NegativeSlack::ClampToZero;
      vsp::heuristics::DispatchResult r;
      if (mode == "best") {
        r = vsp::heuristics::deadline_and_proximity(inst, opts);
      } else {
        const auto m = mode == "proximity" ? vsp::heuristics::Mode::Proximity
                       : mode == "abs"     ? vsp::heuristics::Mode::AbsDeadlineProximity
                                           : vsp::heuristics::Mode::RelDeadlineProximity;
        r = vsp::heuristics::run_dispatch(inst, m, opts);
      }
      vsp::io::write_schedule(r.schedule, out_path, inst.scale());
      std::cout << "mode " << vsp::heuristics::to_string(r.mode) << "\n"
                << "objective " << vsp::to_string(inst.objective()) << " "
                << vsp::evaluate(inst, r.schedule) << "\n";
      for (int j = 0; j < inst.vehicle_count(); ++j)
        if (r.status[j] != vsp::heuristics::VehicleStatus::Completed)
          std::cout << "vehicle " << j << " " << vsp::heuristics::to_string(r.status[j]) << "\n";
      return exit_code(r);
    }

    if (*solve) {
      const auto inst = vsp::io::read_instance(instance_path);
      vsp::exact::ExactOptions opts;
      opts.time_limit_s = time_limit;
      if (horizon) opts.horizon = inst.scale().to_ticks(*horizon);
      if (inst.objective() == vsp::ObjectiveKind::Makespan) {
        const auto m = vsp::exact::solve_min_makespan(inst, opts);
        if (!m.schedule) {
          std::cout << "status infeasible\n";
          return kInfeasible;
        }
        std::cout << "status " << (m.optimal ? "optimal" : "feasible_incumbent") << "\n"
                  << "makespan " << inst.scale().to_units(m.makespan) << "\n";
        vsp::io::write_schedule(*m.schedule, out_path, inst.scale());
        return m.optimal ? kOk : kBudgetIncumbent;
      }
      const auto r = vsp::exact::solve_exact(inst, opts);
      std::cout << "status " << vsp::exact::to_string(r.status) << "\n"
                << "nodes " << r.nodes << "\n";
      if (r.schedule) {
        std::cout << "objective " << r.objective << "\n";
        vsp::io::write_schedule(*r.schedule, out_path, inst.scale());
      }
      for (const auto& c : r.witness)
        std::cout << "witness t" << c.x << " - t" << c.y << " >= " << c.c << "\n";
      switch (r.status) {
        case vsp::exact::ExactStatus::Optimal: return kOk;
        case vsp::exact::ExactStatus::FeasibleIncumbent: return kBudgetIncumbent;
        case vsp::exact::ExactStatus::Infeasible: return kInfeasible;
        case vsp::exact::ExactStatus::BudgetExhausted: return kBudgetNoSolution;
      }
    }

    if (*mip) {
      const auto inst = vsp::io::read_instance(instance_path);
      std::optional<vsp::Tick> h;
      if (horizon) h = inst.scale().to_ticks(*horizon);
      const auto model = vsp::exact::build_mip(inst, h);
      std::ofstream out(out_path);
      out << vsp::exact::write_lp(model);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      std::cout << "variables " << model.variables.size() << " (binary "
                << model.count(vsp::exact::VarType::Binary) << "), rows " << model.rows.size()
                << "\n";
      return kOk;
    }

    if (*generate) {
      vsp::gen::ExperimentConfig cfg;
      cfg.grid = parse_grid(grid);
      cfg.n_vehicles = vehicles;
      cfg.separation = separation;
      cfg.tau_min_link = tau_min;
      cfg.hard_deadline_factor = hard_factor;
      cfg.hard_deadline_per_vertex = hard_per_vertex;
      vsp::io::write_instance(vsp::gen::generate_grid_instance(cfg, ratio, seed), out_path);
      return kOk;
    }

    if (*reduce) {
      const auto jsp = vsp::gen::jsp_from_json(vsp::io::read_json_file(jsp_path));
      vsp::io::write_instance(vsp::gen::reduce_jsp_to_vsp(jsp), out_path);
      return kOk;
    }

    if (*bench) {
      vsp::bench::SweepConfig cfg;
      cfg.experiment.grid = parse_grid(grid);
      cfg.experiment.n_instances = instances;
      cfg.experiment.seed = seed;
      cfg.experiment.hard_deadline_per_vertex = hard_per_vertex;
      cfg.experiment.soft_deadline_ratios = parse_ratios(ratios);
      cfg.vehicle_counts.clear();
      for (const auto& v : split(vehicle_list, ',')) cfg.vehicle_counts.push_back(std::stoi(v));
      cfg.algorithms.clear();
      for (const auto& a : split(algorithms, ','))
        cfg.algorithms.push_back(vsp::bench::algorithm_from_string(a));
      cfg.exact_time_limit_s = exact_limit;
      cfg.exact_max_vehicles = exact_max;
      const auto result = vsp::bench::run_sweep(cfg);
      vsp::bench::emit_csv(result, out_dir);
      vsp::io::write_json_file((std::filesystem::path(out_dir) / "manifest.json").string(),
                               vsp::bench::manifest(cfg));
      std::cout << "wrote " << result.tardy.size() << " tardy rows and "
                << result.runtime.size() << " runtime rows to " << out_dir << "\n";
      return kOk;
    }

    if (*validate) {
      const auto inst = vsp::io::read_instance(instance_path);
      const auto s = vsp::io::read_schedule(schedule_path, inst.scale());
      const auto report = vsp::validate_schedule(inst, s);
      for (const auto& v : report.violations) std::cout << v.describe() << "\n";
      std::cout << "objective " << vsp::to_string(inst.objective()) << " "
                << vsp::evaluate(inst, s) << "\n";
      return report.ok() ? kOk : kError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kOk;
}
