#pragma once

#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "vsp/instance.hpp"
#include "vsp/objective.hpp"

namespace vsp::gen {

struct GridSpec {
  int rows = 5;
  int cols = 5;
  bool bidirectional = true;
};

/// Parameters of the random grid experiments. Defaults follow the published
/// setup: 5x5 grid, gap 5, tau_min 50, unbounded tau_max, hard deadline
/// 2.2 x free trip time, 20 instances.
struct ExperimentConfig {
  GridSpec grid;
  int n_vehicles = 25;
  Tick separation = 5;
  Tick tau_min_link = 50;
  Tick tau_max_link = kInfinity;
  double hard_deadline_factor = 2.2;
  /// Multiply the hard-deadline factor by q_j * tau_min instead of the
  /// free trip time (q_j - 1) * tau_min.
  bool hard_deadline_per_vertex = false;
  std::vector<double> soft_deadline_ratios{1.0, 1.1, 1.2, 1.3, 1.4, 1.5,
                                           1.6, 1.7, 1.8, 1.9, 2.0};
  int n_instances = 20;
  std::uint64_t seed = 42;

  void validate() const {
    if (grid.rows < 1 || grid.cols < 1 || grid.rows * grid.cols < 2)
      throw ConfigError("grid needs at least two vertices");
    if (n_vehicles < 1) throw ConfigError("need at least one vehicle");
    if (n_instances < 1) throw ConfigError("need at least one instance");
    if (separation < 0 || tau_min_link < 0 || tau_max_link < tau_min_link)
      throw ConfigError("invalid separation or link times");
    for (std::size_t k = 1; k < soft_deadline_ratios.size(); ++k)
      if (!(soft_deadline_ratios[k - 1] < soft_deadline_ratios[k]))
        throw ConfigError("soft deadline ratios must be strictly increasing");
    for (double r : soft_deadline_ratios)
      if (!(r >= 1.0) || r > hard_deadline_factor)
        throw ConfigError("soft deadline ratios must lie in [1, hard_deadline_factor]");
  }
};

inline Graph grid_graph(const GridSpec& g) {
  if (g.rows < 1 || g.cols < 1 || g.rows * g.cols < 2)
    throw ConfigError("degenerate grid " + std::to_string(g.rows) + "x" +
                      std::to_string(g.cols));
  std::vector<std::pair<int, int>> edges;
  auto id = [&](int r, int c) { return r * g.cols + c; };
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c) {
      if (c + 1 < g.cols) {
        edges.emplace_back(id(r, c), id(r, c + 1));
        if (g.bidirectional) edges.emplace_back(id(r, c + 1), id(r, c));
      }
      if (r + 1 < g.rows) {
        edges.emplace_back(id(r, c), id(r + 1, c));
        if (g.bidirectional) edges.emplace_back(id(r + 1, c), id(r, c));
      }
    }
  return Graph(g.rows * g.cols, std::move(edges));
}

/// Lexicographically smallest vertex sequence among all shortest paths.
inline std::vector<int> shortest_path(const Graph& g, int from, int to) {
  const int n = g.vertex_count();
  // Distances to `to` over reversed arcs.
  std::vector<std::vector<int>> preds(n);
  for (const auto& [u, v] : g.edges()) preds[v].push_back(u);
  std::vector<int> dist(n, -1);
  std::queue<int> q;
  dist[to] = 0;
  q.push(to);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int u : preds[v])
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        q.push(u);
      }
  }
  if (dist[from] < 0)
    throw InstanceError("no path from " + std::to_string(from) + " to " + std::to_string(to));
  std::vector<int> path{from};
  int cur = from;
  while (cur != to) {
    int next = -1;
    for (int v : g.successors(cur))
      if (dist[v] == dist[cur] - 1 && (next < 0 || v < next)) next = v;
    path.push_back(next);
    cur = next;
  }
  return path;
}

/// Uniform integer in [0, bound) from a 64-bit engine, by rejection so that
/// results do not depend on the standard library's distributions.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Seed for instance `index` of a sweep seeded with `seed`.
inline std::uint64_t instance_seed(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

/// Deadline from a ratio of the free trip time, rounded to the nearest tick.
inline Tick scaled_deadline(double ratio, Tick free_trip) {
  return static_cast<Tick>(std::llround(ratio * static_cast<double>(free_trip)));
}

/// Separation `gap` between every pair of distinct vehicles at every shared vertex.
inline std::vector<Separation> uniform_separations(const std::vector<Walk>& walks, int vertices,
                                                   Tick gap) {
  std::vector<std::vector<StepRef>> visits(vertices);
  for (int j = 0; j < static_cast<int>(walks.size()); ++j)
    for (int i = 0; i < walks[j].size(); ++i) visits[walks[j].vertices[i]].push_back({j, i});
  std::vector<Separation> out;
  for (const auto& at : visits)
    for (std::size_t a = 0; a < at.size(); ++a)
      for (std::size_t b = a + 1; b < at.size(); ++b)
        if (at[a].vehicle != at[b].vehicle) out.push_back({at[a], at[b], gap});
  return out;
}

/// Random grid instance. Walks depend only on `seed`, so one seed gives the
/// same traffic for every deadline ratio.
inline Instance generate_grid_instance(const ExperimentConfig& cfg, double ratio,
                                       std::uint64_t seed) {
  const Graph graph = grid_graph(cfg.grid);
  const int V = graph.vertex_count();
  std::mt19937_64 rng(seed);

  InstanceData d;
  d.graph = graph;
  for (int j = 0; j < cfg.n_vehicles; ++j) {
    const int src = static_cast<int>(uniform_below(rng, V));
    int dst = static_cast<int>(uniform_below(rng, V - 1));
    if (dst >= src) ++dst;
    Walk w;
    w.vertices = shortest_path(graph, src, dst);
    w.tau_min.assign(w.links(), cfg.tau_min_link);
    w.tau_max.assign(w.links(), cfg.tau_max_link);
    d.walks.push_back(std::move(w));
  }
  for (const Walk& w : d.walks) {
    const Tick free_trip = static_cast<Tick>(w.links()) * cfg.tau_min_link;
    const Tick hard_base =
        cfg.hard_deadline_per_vertex ? static_cast<Tick>(w.size()) * cfg.tau_min_link : free_trip;
    d.rho.push_back(0);
    d.d_soft.push_back(scaled_deadline(ratio, free_trip));
    d.d_hard.push_back(std::max(d.d_soft.back(), scaled_deadline(cfg.hard_deadline_factor, hard_base)));
  }
  d.separations = uniform_separations(d.walks, V, cfg.separation);
  d.objective = ObjectiveKind::TardyCount;
  return Instance(std::move(d));
}

}  // namespace vsp::gen
