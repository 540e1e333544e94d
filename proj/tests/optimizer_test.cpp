#include "cdcopt/optimizer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"

namespace cdcopt {
namespace {

using testing::fleet_f2;
using testing::fleet_f3;

TEST(SolveExact, F3PicksSingleFastNode) {
  const auto sol = solve_exact(fleet_f3(), 12.0);
  EXPECT_EQ(sol.plan.k, 1);
  EXPECT_EQ(sol.plan.n, 1);
  EXPECT_EQ(sol.plan.designated, std::vector<std::string>{"B"});
  EXPECT_EQ(sol.plan.selected, sol.plan.designated);
  EXPECT_DOUBLE_EQ(sol.plan.expected_T, 13.0);
  ASSERT_EQ(sol.sweep.size(), 3u);
  EXPECT_DOUBLE_EQ(sol.sweep[0].best_T, 13.0);
  EXPECT_DOUBLE_EQ(sol.sweep[1].best_T, 14.0);
  EXPECT_NEAR(sol.sweep[2].best_T, 20.08, 1e-12);
  EXPECT_EQ(sol.sweep[1].selection, (std::vector<std::string>{"B", "A"}));
}

TEST(SolveExact, F2UsesBothNodes) {
  const auto sol = solve_exact(fleet_f2(), 10.0);
  EXPECT_EQ(sol.plan.k, 2);
  EXPECT_NEAR(sol.plan.expected_T, 10.2, 1e-12);
  EXPECT_NEAR(sol.sweep[0].best_T, 20.2, 1e-12);
}

TEST(SolveExact, SingleNode) {
  const Fleet one({{"solo", 0.3, 0.8, 4.0, 2.0}});
  const auto sol = solve_exact(one, 9.0);
  EXPECT_EQ(sol.plan.k, 1);
  EXPECT_DOUBLE_EQ(sol.plan.expected_T, expected_node_time(one[0], 9.0, 1));
}

TEST(SolveExact, Errors) {
  EXPECT_THROW(solve_exact(Fleet{}, 1.0), InvalidInput);
  EXPECT_THROW(solve_exact(fleet_f3(), 0.0), InvalidInput);
  EXPECT_THROW(solve_exact(fleet_f3(), -3.0), InvalidInput);
}

TEST(SolveExact, TieBreaksTowardSmallerK) {
  // Identical nodes with zero-ish computation: all k give 2 tau.
  const Fleet flat({{"a", 1, 1, 1e15, 1}, {"b", 1, 1, 1e15, 1}, {"c", 1, 1, 1e15, 1}});
  const auto sol = solve_exact(flat, 1e-12);
  EXPECT_EQ(sol.plan.k, 1);
  EXPECT_EQ(sol.plan.designated, std::vector<std::string>{"a"});
}

TEST(SolveBruteforce, Examples) {
  EXPECT_DOUBLE_EQ(solve_bruteforce(fleet_f3(), 12.0).expected_T, 13.0);
  EXPECT_NEAR(solve_bruteforce(fleet_f2(), 10.0).expected_T, 10.2, 1e-12);
  const Fleet one({{"solo", 0.3, 0.8, 4.0, 2.0}});
  EXPECT_DOUBLE_EQ(solve_bruteforce(one, 9.0).expected_T, solve_exact(one, 9.0).plan.expected_T);
}

TEST(SolveBruteforce, RefusesLargeFleets) {
  std::vector<NodeProfile> nodes;
  for (int i = 0; i < 21; ++i) nodes.push_back({"n" + std::to_string(i), 1, 1, 1, 1});
  try {
    solve_bruteforce(Fleet(nodes), 1.0);
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("20"), std::string::npos);
  }
}

TEST(SolveExact, MatchesIndependentEnumeration) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const auto fleet = testing::random_fleet(rng);
    const double D = testing::random_task_size(rng);
    const auto sol = solve_exact(fleet, D);
    const double oracle = testing::enumerate_optimum(fleet, D);
    ASSERT_NEAR(sol.plan.expected_T, oracle, 1e-9 * std::max(1.0, oracle));
    ASSERT_NEAR(solve_bruteforce(fleet, D).expected_T, oracle, 1e-9 * std::max(1.0, oracle));
    // The plan's value is its own objective.
    EXPECT_DOUBLE_EQ(plan_objective(fleet, sol.plan, D), sol.plan.expected_T);
  }
}

TEST(SweepRecord, HoldsFastestKNodes) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto fleet = testing::random_fleet(rng);
    const double D = testing::random_task_size(rng);
    for (const auto& rec : solve_exact(fleet, D).sweep) {
      std::vector<double> times;
      for (const auto& n : fleet) times.push_back(expected_node_time(n, D, rec.k));
      std::sort(times.begin(), times.end());
      ASSERT_EQ(rec.selection.size(), static_cast<std::size_t>(rec.k));
      EXPECT_EQ(rec.best_T, times[rec.k - 1]);
    }
  }
}

TEST(Exchange, SwappingInSlowerNodeNeverHelps) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto fleet = testing::random_fleet(rng);
    const double D = testing::random_task_size(rng);
    const int k = static_cast<int>(1 + rng() % fleet.size());
    const auto rec = best_for_k(fleet, D, k);
    CodePlan plan{k, k, rec.selection, rec.selection, rec.best_T};
    std::vector<std::string> outside;
    for (const auto& n : fleet) {
      if (std::find(rec.selection.begin(), rec.selection.end(), n.id) == rec.selection.end()) {
        outside.push_back(n.id);
      }
    }
    if (outside.empty()) continue;
    const auto& in = rec.selection[rng() % rec.selection.size()];
    const auto& out = outside[rng() % outside.size()];
    const double t_in = expected_node_time(fleet[*fleet.index_of(in)], D, k);
    const double t_out = expected_node_time(fleet[*fleet.index_of(out)], D, k);
    if (!(t_out > t_in)) continue;
    CodePlan swapped = plan;
    std::replace(swapped.designated.begin(), swapped.designated.end(), in, out);
    swapped.selected = swapped.designated;
    EXPECT_GE(plan_objective(fleet, swapped, D), plan_objective(fleet, plan, D));
  }
}

TEST(Baselines, F3) {
  const auto f3 = fleet_f3();
  const auto myopic = baseline_myopic(f3, 12.0);
  EXPECT_EQ(myopic.k, 3);
  EXPECT_EQ(myopic.n, 3);
  EXPECT_NEAR(myopic.expected_T, 20.08, 1e-12);
  const auto one = baseline_onenode(f3, 12.0);
  EXPECT_EQ(one.k, 1);
  EXPECT_EQ(one.designated, std::vector<std::string>{"B"});
  EXPECT_DOUBLE_EQ(one.expected_T, 13.0);
  const auto stat = baseline_static(f3, 12.0);
  EXPECT_EQ(stat.k, 2);
  EXPECT_EQ(stat.designated, (std::vector<std::string>{"B", "A"}));
  EXPECT_DOUBLE_EQ(stat.expected_T, 14.0);
}

TEST(Baselines, F2) {
  const auto f2 = fleet_f2();
  EXPECT_NEAR(baseline_myopic(f2, 10.0).expected_T, 10.2, 1e-12);
  const auto one = baseline_onenode(f2, 10.0);
  EXPECT_EQ(one.designated, std::vector<std::string>{"n1"});
  EXPECT_NEAR(one.expected_T, 20.2, 1e-12);
}

TEST(Baselines, SingleNodeCoincides) {
  const Fleet one({{"solo", 0.3, 0.8, 4.0, 2.0}});
  const double best = solve_exact(one, 9.0).plan.expected_T;
  EXPECT_DOUBLE_EQ(baseline_myopic(one, 9.0).expected_T, best);
  EXPECT_DOUBLE_EQ(baseline_onenode(one, 9.0).expected_T, best);
  EXPECT_EQ(static_code_k(one), 1);
  EXPECT_DOUBLE_EQ(baseline_static(one, 9.0).expected_T, best);
}

TEST(StaticCode, FiftyNodesAlphaTwo) {
  std::vector<NodeProfile> nodes;
  for (int i = 0; i < 50; ++i) nodes.push_back({"n" + std::to_string(i), 0.1, 0.9, 10, 2});
  const Fleet fleet(nodes);
  EXPECT_EQ(static_code_k(fleet), 39);
  EXPECT_EQ(static_code_k(fleet, StaticRounding::kFloor), 38);
  EXPECT_EQ(static_code_k(fleet, StaticRounding::kCeil), 39);
  EXPECT_EQ(baseline_static(fleet, 100.0).k, 39);
}

TEST(StaticCode, RoundingNames) {
  for (auto m : {StaticRounding::kHalfUp, StaticRounding::kFloor, StaticRounding::kCeil}) {
    EXPECT_EQ(parse_static_rounding(to_string(m)), m);
  }
  EXPECT_THROW(parse_static_rounding("banker"), InvalidInput);
}

TEST(Dominance, OptimalBeatsBaselines) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 300; ++trial) {
    const auto fleet = testing::random_fleet(rng);
    const double D = testing::random_task_size(rng);
    const double best = solve_exact(fleet, D).plan.expected_T;
    EXPECT_LE(best, baseline_myopic(fleet, D).expected_T);
    EXPECT_LE(best, baseline_onenode(fleet, D).expected_T);
    EXPECT_LE(best, baseline_static(fleet, D).expected_T);
  }
}

TEST(Redundancy, AddsNextFastestNodes) {
  const auto f3 = fleet_f3();
  const auto plan = solve_exact(f3, 12.0).plan;
  const auto padded = with_redundancy(f3, plan, 12.0, 1);
  EXPECT_EQ(padded.n, 2);
  EXPECT_EQ(padded.k, 1);
  EXPECT_EQ(padded.selected, (std::vector<std::string>{"B", "C"}));  // C: 20.24 < A: 26
  EXPECT_EQ(padded.designated, plan.designated);
  EXPECT_EQ(padded.expected_T, plan.expected_T);
  EXPECT_EQ(with_redundancy(f3, plan, 12.0, 10).n, 3);
  EXPECT_THROW(with_redundancy(f3, plan, 12.0, -1), InvalidInput);
}

TEST(Determinism, RepeatedSolvesIdentical) {
  std::mt19937_64 rng(31);
  const auto fleet = testing::random_fleet(rng, {12, 12});
  const auto a = solve_exact(fleet, 77.0);
  const auto b = solve_exact(fleet, 77.0);
  EXPECT_EQ(a.plan.designated, b.plan.designated);
  EXPECT_EQ(a.plan.expected_T, b.plan.expected_T);
}

}  // namespace
}  // namespace cdcopt
