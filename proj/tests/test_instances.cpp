#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <set>

#include "oracles.hpp"
#include "vsp/exact/branch_and_bound.hpp"
#include "vsp/instances/grid.hpp"
#include "vsp/instances/jsp.hpp"
#include "vsp/io.hpp"

using namespace vsp;
using namespace vsp::gen;

TEST(Grid, FiveByFiveHasEightyArcs) {
  const Graph g = grid_graph({5, 5, true});
  EXPECT_EQ(g.vertex_count(), 25);
  EXPECT_EQ(g.edges().size(), 80u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_TRUE(g.has_edge(0, 5));
  EXPECT_FALSE(g.has_edge(4, 5));  // no wrap-around
  EXPECT_EQ(grid_graph({5, 5, false}).edges().size(), 40u);
  EXPECT_THROW(grid_graph({1, 1, true}), ConfigError);
}

TEST(Grid, WalksAreShortestPaths) {
  ExperimentConfig cfg;
  cfg.n_vehicles = 200;
  const Instance inst = generate_grid_instance(cfg, 1.3, 77);
  for (int j = 0; j < inst.vehicle_count(); ++j) {
    const auto& v = inst.walk(j).vertices;
    const int a = v.front(), b = v.back();
    EXPECT_NE(a, b);
    const int manhattan = std::abs(a / 5 - b / 5) + std::abs(a % 5 - b % 5);
    EXPECT_EQ(static_cast<int>(v.size()), manhattan + 1);
    EXPECT_EQ(std::set<int>(v.begin(), v.end()).size(), v.size());
  }
}

TEST(Grid, DeadlinesFollowTheRatio) {
  ExperimentConfig cfg;
  cfg.n_vehicles = 100;
  for (double ratio : {1.0, 1.5, 2.0}) {
    const Instance inst = generate_grid_instance(cfg, ratio, 5);
    for (int j = 0; j < inst.vehicle_count(); ++j) {
      const Tick free = 50 * static_cast<Tick>(inst.walk(j).size() - 1);
      EXPECT_EQ(min_free_trip_time(inst, j), free);
      EXPECT_EQ(inst.d_soft(j), std::llround(ratio * static_cast<double>(free)));
      EXPECT_EQ(inst.d_hard(j), std::llround(2.2 * static_cast<double>(free)));
      EXPECT_EQ(inst.rho(j), 0);
    }
  }
}

TEST(Grid, FiveVertexTripAtRatioOneAndAHalf) {
  ExperimentConfig cfg;
  cfg.n_vehicles = 200;
  const Instance inst = generate_grid_instance(cfg, 1.5, 3);
  int seen = 0;
  for (int j = 0; j < inst.vehicle_count(); ++j)
    if (inst.walk(j).size() == 5) {
      EXPECT_EQ(inst.d_soft(j), 300);
      ++seen;
    }
  EXPECT_GT(seen, 0);
}

TEST(Grid, PerVertexHardDeadlineFlag) {
  ExperimentConfig cfg;
  cfg.n_vehicles = 30;
  cfg.hard_deadline_per_vertex = true;
  const Instance inst = generate_grid_instance(cfg, 1.0, 9);
  for (int j = 0; j < inst.vehicle_count(); ++j)
    EXPECT_EQ(inst.d_hard(j),
              std::llround(2.2 * 50.0 * static_cast<double>(inst.walk(j).size())));
}

TEST(Grid, SeededDeterminism) {
  ExperimentConfig cfg;
  cfg.n_vehicles = 40;
  const auto a = io::instance_to_json(generate_grid_instance(cfg, 1.2, 1234)).dump();
  const auto b = io::instance_to_json(generate_grid_instance(cfg, 1.2, 1234)).dump();
  const auto c = io::instance_to_json(generate_grid_instance(cfg, 1.2, 1235)).dump();
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_EQ(instance_seed(42, 3), instance_seed(42, 3));
  EXPECT_NE(instance_seed(42, 3), instance_seed(42, 4));
}

TEST(Grid, EveryMeetingGetsOneSeparation) {
  ExperimentConfig cfg;
  cfg.n_vehicles = 30;
  const Instance inst = generate_grid_instance(cfg, 1.0, 8);
  std::set<std::pair<StepRef, StepRef>> expected;
  for (int j1 = 0; j1 < inst.vehicle_count(); ++j1)
    for (int j2 = j1 + 1; j2 < inst.vehicle_count(); ++j2)
      for (int i1 = 0; i1 < inst.walk(j1).size(); ++i1)
        for (int i2 = 0; i2 < inst.walk(j2).size(); ++i2)
          if (inst.walk(j1).vertices[i1] == inst.walk(j2).vertices[i2])
            expected.insert({{j1, i1}, {j2, i2}});
  std::set<std::pair<StepRef, StepRef>> got;
  for (const auto& s : inst.separations()) {
    EXPECT_EQ(s.gap, 5);
    auto a = s.first, b = s.second;
    if (b < a) std::swap(a, b);
    EXPECT_TRUE(got.insert({a, b}).second);
  }
  EXPECT_EQ(got, expected);
}

TEST(Grid, ConfigValidation) {
  ExperimentConfig cfg;
  cfg.soft_deadline_ratios = {1.0, 2.5};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.soft_deadline_ratios = {1.2, 1.1};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.soft_deadline_ratios = {0.9};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.n_vehicles = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Io, InstanceRoundTrip) {
  ExperimentConfig cfg;
  cfg.n_vehicles = 20;
  const Instance inst = generate_grid_instance(cfg, 1.4, 2);
  EXPECT_EQ(io::instance_from_json(io::instance_to_json(inst)), inst);
}

TEST(Io, RejectsMalformedFiles) {
  ExperimentConfig cfg;
  cfg.n_vehicles = 3;
  auto j = io::instance_to_json(generate_grid_instance(cfg, 1.0, 2));
  auto extra = j;
  extra["colour"] = "blue";
  EXPECT_THROW(io::instance_from_json(extra), InstanceError);
  auto short_tau = j;
  short_tau["walks"][0]["tau_min"].push_back(50);
  EXPECT_THROW(io::instance_from_json(short_tau), InstanceError);
  auto missing = j;
  missing.erase("rho");
  EXPECT_THROW(io::instance_from_json(missing), InstanceError);
}

TEST(Jsp, ReductionShape) {
  JspInstance jsp;
  jsp.machines = 3;
  jsp.jobs = {{0, 1, 2}, {2, 0}};
  jsp.release = {0, 1};
  jsp.deadline = {kInfinity, kInfinity};
  const Instance inst = reduce_jsp_to_vsp(jsp);
  EXPECT_EQ(inst.graph().edges().size(), 6u);
  for (int j = 0; j < 2; ++j) {
    for (Tick t : inst.walk(j).tau_min) EXPECT_EQ(t, 1);
    for (Tick t : inst.walk(j).tau_max) EXPECT_TRUE(is_infinite(t));
    EXPECT_TRUE(is_infinite(inst.d_hard(j)));
  }
  EXPECT_EQ(inst.rho(1), 1);
  EXPECT_EQ(inst.separation({0, 0}, {1, 1}), 1);  // both on machine 0
  EXPECT_EQ(inst.separation({0, 2}, {1, 0}), 1);  // both on machine 2
  EXPECT_EQ(inst.separations().size(), 2u);

  jsp.no_wait = true;
  jsp.hard_deadlines = true;
  jsp.deadline = {10, 12};
  const Instance nw = reduce_jsp_to_vsp(jsp);
  for (Tick t : nw.walk(0).tau_max) EXPECT_EQ(t, 1);
  EXPECT_EQ(nw.d_hard(1), 12);
  EXPECT_EQ(nw.d_soft(1), 12);
}

TEST(Jsp, RepeatedMachineIsRejected) {
  JspInstance jsp;
  jsp.machines = 2;
  jsp.jobs = {{0, 0}};
  jsp.release = {0};
  jsp.deadline = {kInfinity};
  EXPECT_THROW(reduce_jsp_to_vsp(jsp), InstanceError);
}

TEST(Jsp, SmallMakespans) {
  JspInstance one;
  one.machines = 2;
  one.jobs = {{0, 1}};
  one.release = {0};
  one.deadline = {kInfinity};
  EXPECT_EQ(oracle::jsp_min_makespan(one), 1);
  auto r = exact::solve_min_makespan(reduce_jsp_to_vsp(one));
  EXPECT_TRUE(r.optimal);
  EXPECT_EQ(r.makespan, 1);

  JspInstance two = one;
  two.jobs = {{0, 1}, {0, 1}};
  two.release = {0, 0};
  two.deadline = {kInfinity, kInfinity};
  EXPECT_EQ(oracle::jsp_min_makespan(two), 2);
  r = exact::solve_min_makespan(reduce_jsp_to_vsp(two));
  EXPECT_TRUE(r.optimal);
  EXPECT_EQ(r.makespan, 2);
}

TEST(Jsp, RandomReductionsMatchBruteForce) {
  std::mt19937_64 rng(404);
  for (int rep = 0; rep < 30; ++rep) {
    const JspInstance jsp = oracle::random_jsp(rng, 3, 4, 4);
    const auto r = exact::solve_min_makespan(reduce_jsp_to_vsp(jsp));
    ASSERT_TRUE(r.optimal);
    EXPECT_EQ(r.makespan, oracle::jsp_min_makespan(jsp));
  }
}

TEST(Jsp, JsonRoundTrip) {
  std::mt19937_64 rng(1);
  JspInstance jsp = oracle::random_jsp(rng, 3, 3, 3);
  jsp.hard_deadlines = true;
  jsp.deadline.assign(jsp.jobs.size(), 9);
  const auto back = jsp_from_json(jsp_to_json(jsp));
  EXPECT_EQ(back.jobs, jsp.jobs);
  EXPECT_EQ(back.deadline, jsp.deadline);
  EXPECT_TRUE(back.hard_deadlines);
  nlohmann::json bad = jsp_to_json(jsp);
  bad["deadlines"] = "sometimes";
  EXPECT_THROW(jsp_from_json(bad), InstanceError);
}
