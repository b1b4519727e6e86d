#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "vsp/exact/branch_and_bound.hpp"
#include "vsp/exact/lp_format.hpp"
#include "vsp/exact/mip.hpp"
#include "vsp/io.hpp"

using namespace vsp;
using namespace vsp::exact;

namespace {

Graph abc() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

Walk walk(std::vector<int> v, Tick tau = 50) {
  Walk w;
  w.vertices = std::move(v);
  w.tau_min.assign(w.vertices.size() - 1, tau);
  w.tau_max.assign(w.vertices.size() - 1, kInfinity);
  return w;
}

Instance converging(Tick hard0, Tick hard1, Tick d0 = 50, Tick d1 = 50) {
  InstanceData d;
  d.graph = abc();
  d.walks = {walk({0, 2}), walk({1, 2})};
  d.rho = {0, 0};
  d.d_soft = {d0, d1};
  d.d_hard = {hard0, hard1};
  d.separations = {{{0, 1}, {1, 1}, 5}};
  return Instance(d);
}

Instance single(Tick d_soft, Tick d_hard) {
  InstanceData d;
  d.graph = abc();
  d.walks = {walk({0, 2})};
  d.rho = {0};
  d.d_soft = {d_soft};
  d.d_hard = {d_hard};
  return Instance(d);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// MIP variable values implied by a schedule.
std::map<std::string, double> assignment(const Instance& inst, const Schedule& s) {
  std::map<std::string, double> v;
  for (int j = 0; j < inst.vehicle_count(); ++j)
    for (int i = 0; i < inst.walk(j).size(); ++i)
      v[mip_names::t({j, i})] = static_cast<double>(s.times[j][i]);
  for (const auto& p : conflict_pairs(inst)) {
    const double diff = static_cast<double>(s.times[p.first.vehicle][p.first.step] -
                                            s.times[p.second.vehicle][p.second.step]);
    v[mip_names::P(p)] = std::max(diff, 0.0);
    v[mip_names::N(p)] = std::max(-diff, 0.0);
    v[mip_names::b(p)] = diff > 0 ? 1 : 0;
  }
  for (int j = 0; j < inst.vehicle_count(); ++j) {
    if (is_infinite(inst.d_soft(j))) continue;
    const double gap = static_cast<double>(inst.d_soft(j) - s.completion(j));
    v[mip_names::X(j)] = std::max(gap, 0.0);
    v[mip_names::l(j)] = gap < 0 ? 1 : 0;
  }
  return v;
}

bool satisfies(const MipModel& m, const std::map<std::string, double>& v) {
  for (const auto& var : m.variables) {
    const double x = v.at(var.name);
    if (x < var.lower - 1e-9 || x > var.upper + 1e-9) return false;
  }
  for (const auto& row : m.rows) {
    double lhs = 0;
    for (const auto& t : row.terms) lhs += t.coef * v.at(t.var);
    const bool ok = row.sense == Sense::LessEqual      ? lhs <= row.rhs + 1e-9
                    : row.sense == Sense::GreaterEqual ? lhs >= row.rhs - 1e-9
                                                       : std::abs(lhs - row.rhs) <= 1e-9;
    if (!ok) return false;
  }
  return true;
}

double objective(const MipModel& m, const std::map<std::string, double>& v) {
  double z = 0;
  for (const auto& t : m.objective) z += t.coef * v.at(t.var);
  return z;
}

}  // namespace

TEST(BigM, FromLargestHardDeadline) {
  const auto m = big_m_values(converging(990, 500));
  EXPECT_EQ(m.horizon, 990);
  ASSERT_EQ(m.pair.size(), 1u);
  EXPECT_EQ(m.pair[0], 995);
  EXPECT_EQ(m.vehicle[0], 990);
}

TEST(BigM, SingleVehicle) {
  const auto m = big_m_values(single(100, 100));
  EXPECT_TRUE(m.pair.empty());
  EXPECT_EQ(m.vehicle[0], 100);
}

TEST(BigM, CallerHorizonOverrides) {
  const auto m = big_m_values(converging(990, 500), 1000);
  EXPECT_EQ(m.pair[0], 1005);
  EXPECT_EQ(m.vehicle[0], 1000);
  EXPECT_EQ(m.vehicle[1], 1000);
}

TEST(BigM, UnboundedWithoutHorizonIsAnError) {
  EXPECT_THROW(big_m_values(converging(kInfinity, 500)), ConfigError);
  EXPECT_NO_THROW(big_m_values(converging(kInfinity, 500), 2000));
}

TEST(BuildMip, SingleVehicleHasNoPairVariables) {
  const auto m = build_mip(single(100, 100));
  EXPECT_EQ(m.count(VarType::Binary), 1u);
  EXPECT_NE(m.find("l_1"), nullptr);
  EXPECT_NE(m.find("X_1"), nullptr);
  EXPECT_EQ(m.find("b_1_2_2_2"), nullptr);
}

TEST(BuildMip, TwoVehiclesShareOnePair) {
  const auto m = build_mip(converging(200, 200));
  int b = 0, p = 0, n = 0, sep_rows = 0;
  for (const auto& v : m.variables) {
    b += v.name.rfind("b_", 0) == 0;
    p += v.name.rfind("P_", 0) == 0;
    n += v.name.rfind("N_", 0) == 0;
  }
  for (const auto& r : m.rows) sep_rows += r.name.rfind("sep_", 0) == 0;
  EXPECT_EQ(b, 1);
  EXPECT_EQ(p, 1);
  EXPECT_EQ(n, 1);
  EXPECT_EQ(sep_rows, 5);
  EXPECT_NE(m.find("b_1_2_2_2"), nullptr);
}

TEST(BuildMip, UnboundedSoftDeadlineHasNoIndicator) {
  const auto m = build_mip(converging(kInfinity, 200, kInfinity, 50), 400);
  EXPECT_EQ(m.find("l_1"), nullptr);
  EXPECT_NE(m.find("l_2"), nullptr);
  EXPECT_EQ(m.objective.size(), 1u);
}

TEST(BuildMip, WeightsReachTheObjective) {
  InstanceData d = converging(200, 200).data();
  d.weights = std::vector<double>{3, 1};
  d.objective = ObjectiveKind::WeightedTardyCount;
  const auto m = build_mip(Instance(d));
  ASSERT_EQ(m.objective.size(), 2u);
  EXPECT_EQ(m.objective[0].coef, 3);
}

TEST(LpFormat, RoundTripsGeneratedModels) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    const Instance inst = oracle::small_grid_instance(rng, 30);
    const auto m = build_mip(inst);
    const auto text = write_lp(m);
    const auto back = parse_lp(text);
    EXPECT_EQ(back, m);
  }
}

TEST(LpFormat, ParsesFreeFormLayout) {
  const std::string text =
      "\\ comment\nMINIMIZE\n obj: 2 x + y\nsubject to\n c1: x\n  + y >= 1\n"
      " c2: -x + 3.5 y <= 7\nBOUNDS\n -1 <= x <= 4\n y >= -2\nBinaries\n z\nEND\n";
  const auto m = parse_lp(text);
  ASSERT_EQ(m.rows.size(), 2u);
  EXPECT_EQ(m.rows[0].terms.size(), 2u);
  EXPECT_EQ(m.rows[1].terms[1].coef, 3.5);
  EXPECT_EQ(m.find("x")->lower, -1);
  EXPECT_EQ(m.find("x")->upper, 4);
  EXPECT_EQ(m.find("y")->lower, -2);
  EXPECT_EQ(m.find("z")->type, VarType::Binary);
}

TEST(LpFormat, RejectsGarbage) {
  EXPECT_THROW(parse_lp("Minimize\n obj: x\nSubject To\n c: x >=\nEnd\n"), LpParseError);
  EXPECT_THROW(parse_lp("Subject To\n c: x ? 3\nEnd\n"), LpParseError);
}

TEST(LpFormat, GoldenFiles) {
  const std::filesystem::path dir = std::filesystem::path(VSP_SOURCE_DIR) / "tests" / "golden";
  int checked = 0;
  for (int k = 0; k < 10; ++k) {
    const auto inst = io::read_instance((dir / ("inst_" + std::to_string(k) + ".json")).string());
    const auto golden = slurp(dir / ("inst_" + std::to_string(k) + ".lp"));
    const auto m = build_mip(inst);
    EXPECT_EQ(write_lp(m), golden) << "inst_" << k;
    EXPECT_EQ(parse_lp(golden), m) << "inst_" << k;
    ++checked;
  }
  EXPECT_EQ(checked, 10);
}

// The exact optimum, lifted to MIP variables, satisfies every row and scores
// the same objective; decoding the binaries recovers an equally good schedule.
TEST(BuildMip, ExactOptimumIsAFeasibleMipPoint) {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 40; ++rep) {
    const Instance inst = oracle::small_grid_instance(rng, 20);
    const auto r = solve_exact(inst);
    ASSERT_EQ(r.status, ExactStatus::Optimal);
    const auto m = build_mip(inst);
    const auto v = assignment(inst, *r.schedule);
    EXPECT_TRUE(satisfies(m, v));
    EXPECT_DOUBLE_EQ(objective(m, v), r.objective);
    const auto decoded = schedule_from_mip_solution(inst, v);
    ASSERT_TRUE(decoded);
    EXPECT_TRUE(validate_schedule(inst, *decoded).ok());
    EXPECT_LE(tardy_count(inst, *decoded), r.objective);
  }
}

// A schedule that breaks a separation admits no binary setting.
TEST(BuildMip, SeparationViolationIsInfeasible) {
  const Instance inst = converging(200, 200);
  const auto m = build_mip(inst);
  const Schedule bad{{{0, 50}, {0, 52}}};
  auto v = assignment(inst, bad);
  for (double b : {0.0, 1.0}) {
    v["b_1_2_2_2"] = b;
    EXPECT_FALSE(satisfies(m, v));
  }
}
