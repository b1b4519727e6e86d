#pragma once

// JSON text format for instances and schedules. Every numeric time value is
// written in user units (ticks / ticks_per_unit); null stands for +infinity.
//
// instance: {"vertices": V, "edges": [[u,v],...],
//            "walks": [{"vertices": [...], "tau_min": [...], "tau_max": [...]}],
//            "rho": [...], "d_soft": [...], "d_hard": [...],
//            "separations": [[j1,i1,j2,i2,s],...], "objective": "tardy_count",
//            "weights": [...] | null, "ticks_per_unit": k}
// schedule: {"times": [[...], ...]}

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "vsp/instance.hpp"

namespace vsp::io {

using nlohmann::json;

namespace detail {

inline json time_value(Tick t, const TimeScale& scale) {
  if (is_infinite(t)) return nullptr;
  if (t % scale.ticks_per_unit == 0) return t / scale.ticks_per_unit;
  return scale.to_units(t);
}

inline Tick read_time(const json& v, const TimeScale& scale, const std::string& where) {
  if (v.is_null()) return kInfinity;
  if (!v.is_number())
    throw InstanceError(where + ": expected a number or null");
  try {
    if (v.is_number_integer()) {
      const auto x = v.get<std::int64_t>();
      return x * scale.ticks_per_unit;
    }
    return scale.to_ticks(v.get<double>());
  } catch (const std::invalid_argument& e) {
    throw InstanceError(where + ": " + e.what());
  }
}

inline json time_array(const std::vector<Tick>& ts, const TimeScale& scale) {
  json arr = json::array();
  for (Tick t : ts) arr.push_back(time_value(t, scale));
  return arr;
}

inline std::vector<Tick> read_time_array(const json& v, const TimeScale& scale,
                                         const std::string& where) {
  if (!v.is_array()) throw InstanceError(where + ": expected an array");
  std::vector<Tick> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(read_time(v[k], scale, where + "[" + std::to_string(k) + "]"));
  return out;
}

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& what) {
  if (!obj.is_object()) throw InstanceError(what + ": expected a JSON object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key))
      throw InstanceError(what + ": unknown key '" + key + "'");
}

inline const json& require(const json& obj, const char* key, const std::string& what) {
  const auto it = obj.find(key);
  if (it == obj.end())
    throw InstanceError(what + ": missing key '" + std::string(key) + "'");
  return *it;
}

}  // namespace detail

inline json instance_to_json(const Instance& inst) {
  const TimeScale& sc = inst.scale();
  json j;
  j["vertices"] = inst.graph().vertex_count();
  json edges = json::array();
  for (const auto& [u, v] : inst.graph().edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  json walks = json::array();
  for (const Walk& w : inst.walks())
    walks.push_back({{"vertices", w.vertices},
                     {"tau_min", detail::time_array(w.tau_min, sc)},
                     {"tau_max", detail::time_array(w.tau_max, sc)}});
  j["walks"] = std::move(walks);
  j["rho"] = detail::time_array(inst.data().rho, sc);
  j["d_soft"] = detail::time_array(inst.data().d_soft, sc);
  j["d_hard"] = detail::time_array(inst.data().d_hard, sc);
  json seps = json::array();
  for (const Separation& s : inst.separations())
    seps.push_back({s.first.vehicle, s.first.step, s.second.vehicle, s.second.step,
                    detail::time_value(s.gap, sc)});
  j["separations"] = std::move(seps);
  j["objective"] = std::string(to_string(inst.objective()));
  j["weights"] = inst.weights() ? json(*inst.weights()) : json(nullptr);
  j["ticks_per_unit"] = sc.ticks_per_unit;
  return j;
}

inline Instance instance_from_json(const json& j) {
  static const std::set<std::string> kKeys{
      "vertices", "edges",      "walks",     "rho",     "d_soft",        "d_hard",
      "separations", "objective", "weights", "ticks_per_unit"};
  detail::reject_unknown_keys(j, kKeys, "instance");
  try {
    InstanceData d;
    if (j.contains("ticks_per_unit"))
      d.scale.ticks_per_unit = j["ticks_per_unit"].get<std::int64_t>();
    if (d.scale.ticks_per_unit < 1) throw InstanceError("ticks_per_unit must be positive");
    const TimeScale& sc = d.scale;

    std::vector<std::pair<int, int>> edges;
    for (const auto& e : detail::require(j, "edges", "instance")) {
      if (!e.is_array() || e.size() != 2)
        throw InstanceError("edges: each edge must be a [u, v] pair");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    d.graph = Graph(detail::require(j, "vertices", "instance").get<int>(),
                    std::move(edges));

    const json& walks = detail::require(j, "walks", "instance");
    if (!walks.is_array()) throw InstanceError("walks: expected an array");
    for (std::size_t k = 0; k < walks.size(); ++k) {
      const std::string where = "walks[" + std::to_string(k) + "]";
      detail::reject_unknown_keys(walks[k], {"vertices", "tau_min", "tau_max"}, where);
      Walk w;
      w.vertices = detail::require(walks[k], "vertices", where).get<std::vector<int>>();
      w.tau_min = detail::read_time_array(detail::require(walks[k], "tau_min", where),
                                          sc, where + ".tau_min");
      w.tau_max = detail::read_time_array(detail::require(walks[k], "tau_max", where),
                                          sc, where + ".tau_max");
      if (w.tau_min.size() + 1 != w.vertices.size() ||
          w.tau_max.size() + 1 != w.vertices.size())
        throw InstanceError(where + ": length mismatch, tau_min and tau_max need " +
                            std::to_string(w.vertices.size() - 1) + " entries");
      d.walks.push_back(std::move(w));
    }
    const std::size_t n = d.walks.size();
    auto per_vehicle = [&](const char* key, bool required) {
      if (!j.contains(key)) {
        if (required) detail::require(j, key, "instance");
        return std::vector<Tick>(n, kInfinity);
      }
      auto v = detail::read_time_array(j[key], sc, key);
      if (v.size() != n)
        throw InstanceError(std::string(key) + ": length mismatch, expected " +
                            std::to_string(n) + " entries");
      return v;
    };
    d.rho = per_vehicle("rho", true);
    d.d_soft = per_vehicle("d_soft", false);
    d.d_hard = per_vehicle("d_hard", false);

    if (j.contains("separations")) {
      for (const auto& s : j["separations"]) {
        if (!s.is_array() || s.size() != 5)
          throw InstanceError("separations: each entry must be [j1, i1, j2, i2, s]");
        d.separations.push_back({{s[0].get<int>(), s[1].get<int>()},
                                 {s[2].get<int>(), s[3].get<int>()},
                                 detail::read_time(s[4], sc, "separations")});
      }
    }
    if (j.contains("objective"))
      d.objective = objective_from_string(j["objective"].get<std::string>());
    if (j.contains("weights") && !j["weights"].is_null())
      d.weights = j["weights"].get<std::vector<double>>();
    return Instance(std::move(d));
  } catch (const json::exception& e) {
    throw InstanceError(std::string("malformed instance: ") + e.what());
  }
}

inline json schedule_to_json(const Schedule& s, const TimeScale& scale = {}) {
  json times = json::array();
  for (const auto& row : s.times) times.push_back(detail::time_array(row, scale));
  return {{"times", std::move(times)}};
}

inline Schedule schedule_from_json(const json& j, const TimeScale& scale = {}) {
  detail::reject_unknown_keys(j, {"times"}, "schedule");
  Schedule s;
  const json& times = detail::require(j, "times", "schedule");
  if (!times.is_array()) throw InstanceError("schedule: times must be an array");
  for (const auto& row : times) {
    s.times.push_back(detail::read_time_array(row, scale, "times"));
    for (Tick t : s.times.back())
      if (is_infinite(t)) throw InstanceError("schedule: time stamps must be finite");
  }
  return s;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InstanceError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path);
}

inline Instance read_instance(const std::string& path) {
  return instance_from_json(read_json_file(path));
}

inline void write_instance(const Instance& inst, const std::string& path) {
  write_json_file(path, instance_to_json(inst));
}

inline Schedule read_schedule(const std::string& path, const TimeScale& scale = {}) {
  return schedule_from_json(read_json_file(path), scale);
}

inline void write_schedule(const Schedule& s, const std::string& path,
                           const TimeScale& scale = {}) {
  write_json_file(path, schedule_to_json(s, scale));
}

}  // namespace vsp::io
