#pragma once

// Unit-time job shop instances and their conversion to vehicle scheduling.
//
// JSON schema: {"machines": K, "jobs": [[m, ...], ...], "r": [...],
//               "delta": [... | null], "theta": bool,
//               "deadlines": "soft" | "hard", "objective": "makespan"}
// Machines are 0-based. null deadlines are +infinity.

#include <string>
#include <vector>

#include "json.hpp"
#include "vsp/instance.hpp"
#include "vsp/io.hpp"

namespace vsp::gen {

struct JspInstance {
  int machines = 0;
  std::vector<std::vector<int>> jobs;  // machine sequence per job
  std::vector<Tick> release;           // r
  std::vector<Tick> deadline;          // delta, kInfinity when absent
  bool no_wait = false;                // theta
  bool hard_deadlines = false;
  ObjectiveKind objective = ObjectiveKind::Makespan;

  void validate() const {
    if (machines < 1) throw InstanceError("job shop needs at least one machine");
    if (release.size() != jobs.size() || deadline.size() != jobs.size())
      throw InstanceError("r and delta need one entry per job");
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].empty()) throw InstanceError("job " + std::to_string(j) + " is empty");
      for (std::size_t i = 0; i < jobs[j].size(); ++i) {
        if (jobs[j][i] < 0 || jobs[j][i] >= machines)
          throw InstanceError("job " + std::to_string(j) + " uses missing machine " +
                              std::to_string(jobs[j][i]));
        if (i > 0 && jobs[j][i] == jobs[j][i - 1])
          throw InstanceError("job " + std::to_string(j) +
                              " repeats a machine on consecutive operations; the "
                              "reduction would need a self-loop");
      }
    }
  }
};

/// Complete digraph on the machines, one walk per job, unit link times
/// (upper bound 1 when no-wait, else unbounded), rho = r, unit separation at
/// every shared machine. Hard deadlines become d = d' = delta; soft ones
/// d = delta, d' = infinity. A schedule maps back by x_j^i = t_j^i.
inline Instance reduce_jsp_to_vsp(const JspInstance& jsp) {
  jsp.validate();
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < jsp.machines; ++u)
    for (int v = 0; v < jsp.machines; ++v)
      if (u != v) edges.emplace_back(u, v);

  InstanceData d;
  d.graph = Graph(jsp.machines, std::move(edges));
  for (std::size_t j = 0; j < jsp.jobs.size(); ++j) {
    Walk w;
    w.vertices = jsp.jobs[j];
    w.tau_min.assign(w.links(), 1);
    w.tau_max.assign(w.links(), jsp.no_wait ? 1 : kInfinity);
    d.walks.push_back(std::move(w));
    d.rho.push_back(jsp.release[j]);
    d.d_soft.push_back(jsp.deadline[j]);
    d.d_hard.push_back(jsp.hard_deadlines ? jsp.deadline[j] : kInfinity);
  }
  std::vector<std::vector<StepRef>> visits(jsp.machines);
  for (int j = 0; j < static_cast<int>(d.walks.size()); ++j)
    for (int i = 0; i < d.walks[j].size(); ++i) visits[d.walks[j].vertices[i]].push_back({j, i});
  for (const auto& at : visits)
    for (std::size_t a = 0; a < at.size(); ++a)
      for (std::size_t b = a + 1; b < at.size(); ++b)
        if (at[a].vehicle != at[b].vehicle) d.separations.push_back({at[a], at[b], 1});
  d.objective = jsp.objective;
  return Instance(std::move(d));
}

inline JspInstance jsp_from_json(const nlohmann::json& j) {
  io::detail::reject_unknown_keys(
      j, {"machines", "jobs", "r", "delta", "theta", "deadlines", "objective"}, "jsp");
  try {
    JspInstance jsp;
    jsp.machines = io::detail::require(j, "machines", "jsp").get<int>();
    jsp.jobs = io::detail::require(j, "jobs", "jsp").get<std::vector<std::vector<int>>>();
    const TimeScale unit;
    jsp.release = j.contains("r") ? io::detail::read_time_array(j["r"], unit, "r")
                                  : std::vector<Tick>(jsp.jobs.size(), 0);
    jsp.deadline = j.contains("delta") ? io::detail::read_time_array(j["delta"], unit, "delta")
                                       : std::vector<Tick>(jsp.jobs.size(), kInfinity);
    jsp.no_wait = j.value("theta", false);
    const std::string kind = j.value("deadlines", std::string("soft"));
    if (kind != "soft" && kind != "hard")
      throw InstanceError("jsp: deadlines must be \"soft\" or \"hard\"");
    jsp.hard_deadlines = kind == "hard";
    if (j.contains("objective"))
      jsp.objective = objective_from_string(j["objective"].get<std::string>());
    jsp.validate();
    return jsp;
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(std::string("malformed jsp: ") + e.what());
  }
}

inline nlohmann::json jsp_to_json(const JspInstance& jsp) {
  const TimeScale unit;
  return {{"machines", jsp.machines},
          {"jobs", jsp.jobs},
          {"r", io::detail::time_array(jsp.release, unit)},
          {"delta", io::detail::time_array(jsp.deadline, unit)},
          {"theta", jsp.no_wait},
          {"deadlines", jsp.hard_deadlines ? "hard" : "soft"},
          {"objective", std::string(to_string(jsp.objective))}};
}

}  // namespace vsp::gen
