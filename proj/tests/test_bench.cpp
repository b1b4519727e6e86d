#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vsp/bench/sweep.hpp"

using namespace vsp;
using namespace vsp::bench;

namespace {

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.vehicle_counts = {10, 20};
  cfg.experiment.n_instances = 3;
  return cfg;
}

std::vector<std::string> lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("vsp_bench_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::string strip_runtime(const std::vector<std::string>& runs) {
  // Drop the runtime_s column (second to last).
  std::string out;
  for (const auto& l : runs) {
    const auto last = l.rfind(',');
    const auto prev = l.rfind(',', last - 1);
    out += l.substr(0, prev) + l.substr(last) + "\n";
  }
  return out;
}

}  // namespace

TEST(Sweep, CsvShapes) {
  const auto cfg = small_config();
  const auto result = run_sweep(cfg);
  const auto dir = scratch("shape");
  emit_csv(result, dir);
  const auto tardy = lines(dir / "tardy.csv");
  const auto runtime = lines(dir / "runtime.csv");
  EXPECT_EQ(tardy.front(), "n,ratio,algorithm,mean_tardy_fraction,stderr");
  EXPECT_EQ(runtime.front(), "n,algorithm,mean_worst_runtime_s");
  EXPECT_EQ(tardy.size(), 1u + 2 * 2 * 11);
  EXPECT_EQ(runtime.size(), 1u + 2 * 2);
  EXPECT_EQ(lines(dir / "runs.csv").size(), 1u + 2 * 3 * 11 * 2);
  for (const auto& c : result.tardy) EXPECT_EQ(c.samples, 3);
}

TEST(Sweep, NoAlgorithmsGivesHeadersOnly) {
  auto cfg = small_config();
  cfg.algorithms.clear();
  const auto dir = scratch("empty");
  emit_csv(run_sweep(cfg), dir);
  EXPECT_EQ(lines(dir / "tardy.csv").size(), 1u);
  EXPECT_EQ(lines(dir / "runtime.csv").size(), 1u);
}

TEST(Sweep, SingleCell) {
  SweepConfig cfg;
  cfg.vehicle_counts = {5};
  cfg.experiment.n_instances = 1;
  cfg.experiment.soft_deadline_ratios = {1.5};
  const auto r = run_sweep(cfg);
  ASSERT_EQ(r.tardy.size(), 2u);
  EXPECT_EQ(r.tardy[0].samples, 1);
  EXPECT_EQ(r.tardy[0].stderr_, 0.0);
}

TEST(Sweep, BaselineMonotoneAndHeuristicNoWorse) {
  auto cfg = small_config();
  cfg.experiment.n_instances = 5;
  const auto r = run_sweep(cfg);
  std::map<std::tuple<int, double, Algorithm>, double> mean;
  for (const auto& c : r.tardy) mean[{c.n, c.ratio, c.algorithm}] = c.mean_tardy_fraction;
  for (int n : cfg.vehicle_counts) {
    const auto& ratios = cfg.experiment.soft_deadline_ratios;
    for (std::size_t k = 0; k < ratios.size(); ++k) {
      const double base = mean[{n, ratios[k], Algorithm::Baseline}];
      const double heur = mean[{n, ratios[k], Algorithm::Heuristic}];
      EXPECT_LE(heur, base + 1e-12);
      if (k > 0) {
        const double prev = mean[{n, ratios[k - 1], Algorithm::Baseline}];
        EXPECT_LE(base, prev + 1e-12);
      }
    }
  }
}

TEST(Sweep, ExactOnlyBelowTheCap) {
  SweepConfig cfg;
  cfg.vehicle_counts = {4, 12};
  cfg.experiment.n_instances = 2;
  cfg.experiment.soft_deadline_ratios = {1.0, 1.5};
  cfg.algorithms = {Algorithm::Heuristic, Algorithm::Exact};
  cfg.exact_max_vehicles = 8;
  cfg.exact_time_limit_s = 5;
  const auto r = run_sweep(cfg);
  for (const auto& run : r.runs)
    if (run.algorithm == Algorithm::Exact) {
      EXPECT_LE(run.n, 8);
    }
  int heur = 0, exact = 0;
  for (const auto& c : r.tardy) (c.algorithm == Algorithm::Exact ? exact : heur) += 1;
  EXPECT_EQ(heur, 4);
  EXPECT_EQ(exact, 2);
}

TEST(Sweep, ExactNeedsATimeLimit) {
  auto cfg = small_config();
  cfg.algorithms = {Algorithm::Exact};
  cfg.exact_time_limit_s = 0;
  EXPECT_THROW(run_sweep(cfg), ConfigError);
}

TEST(Sweep, Reproducible) {
  const auto cfg = small_config();
  const auto a = scratch("rep_a"), b = scratch("rep_b");
  emit_csv(run_sweep(cfg), a);
  emit_csv(run_sweep(cfg), b);
  EXPECT_EQ(lines(a / "tardy.csv"), lines(b / "tardy.csv"));
  EXPECT_EQ(strip_runtime(lines(a / "runs.csv")), strip_runtime(lines(b / "runs.csv")));
}

TEST(Sweep, ManifestRecordsConfiguration) {
  const auto m = manifest(small_config());
  EXPECT_EQ(m["vehicle_counts"], nlohmann::json({10, 20}));
  EXPECT_EQ(m["instances"], 3);
  EXPECT_EQ(m["separation"], 5);
  EXPECT_TRUE(m["tau_max"].is_null());
  EXPECT_EQ(m["algorithms"], nlohmann::json({"baseline", "heuristic"}));
}

TEST(Sweep, AlgorithmNames) {
  EXPECT_EQ(algorithm_from_string("exact"), Algorithm::Exact);
  EXPECT_THROW(algorithm_from_string("gurobi"), ConfigError);
}
