#include "cdcopt/model.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"

namespace cdcopt {
namespace {

using testing::fleet_f3;

NodeProfile node(double tau, double p, double eta, double alpha) {
  return {"n", tau, p, eta, alpha};
}

TEST(ExpectedCommTime, ClosedForm) {
  EXPECT_DOUBLE_EQ(expected_comm_time(node(1, 1, 1, 1)), 2.0);
  EXPECT_DOUBLE_EQ(expected_comm_time(node(1, 0.5, 1, 1)), 4.0);
  EXPECT_DOUBLE_EQ(expected_comm_time(node(3, 0.9, 1, 1)), 2.0 * 3.0 / 0.9);
}

TEST(ExpectedCompTime, ClosedForm) {
  EXPECT_DOUBLE_EQ(expected_comp_time(node(1, 1, 5, 2), 100, 10), 3.0);
  EXPECT_DOUBLE_EQ(expected_comp_time(node(1, 1, 1, 1), 12, 3), 8.0);
  EXPECT_NEAR(expected_comp_time(node(1, 1, 1, 1e6), 10, 1), 10.0, 1e-4);
}

TEST(ExpectedCompTime, RejectsZeroK) {
  EXPECT_THROW(expected_comp_time(node(1, 1, 1, 1), 10, 0), InvalidInput);
}

TEST(ExpectedNodeTime, Examples) {
  EXPECT_DOUBLE_EQ(expected_node_time(node(1, 0.5, 5, 2), 100, 10), 7.0);
  const auto f3 = fleet_f3();
  EXPECT_DOUBLE_EQ(expected_node_time(f3[1], 12, 1), 13.0);
  EXPECT_DOUBLE_EQ(expected_node_time(f3[0], 12, 2), 14.0);
}

TEST(ExpectedNodeTime, Properties) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto fleet = testing::random_fleet(rng);
    const double D = testing::random_task_size(rng);
    for (const auto& n : fleet) {
      // Additivity.
      EXPECT_EQ(expected_node_time(n, D, 3),
                expected_comm_time(n) + expected_comp_time(n, D, 3));
      // Strictly decreasing in k, bounded below by the comm term.
      double prev = expected_node_time(n, D, 1);
      for (int k = 2; k <= 40; ++k) {
        const double cur = expected_node_time(n, D, k);
        EXPECT_LT(cur, prev);
        EXPECT_GT(cur, expected_comm_time(n));
        prev = cur;
      }
      EXPECT_NEAR(expected_node_time(n, D, 1 << 30), expected_comm_time(n),
                  1e-6 * expected_comm_time(n) + D / n.eta * 1e-8);
      // Scale invariance of the computation term.
      EXPECT_NEAR(expected_comp_time(n, 4.0 * D, 8), expected_comp_time(n, D, 2),
                  1e-12 * expected_comp_time(n, D, 2));
    }
  }
}

TEST(NodeProfile, ValidateNamesField) {
  try {
    NodeProfile{"bad", 1, 0.0, 1, 1}.validate();
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("p"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("bad"), std::string::npos);
  }
  EXPECT_THROW((NodeProfile{"t", 0, 1, 1, 1}.validate()), InvalidInput);
  EXPECT_THROW((NodeProfile{"e", 1, 1, -1, 1}.validate()), InvalidInput);
  EXPECT_THROW((NodeProfile{"a", 1, 1, 1, 0}.validate()), InvalidInput);
  EXPECT_THROW((NodeProfile{"p", 1, 1.5, 1, 1}.validate()), InvalidInput);
  EXPECT_NO_THROW((NodeProfile{"ok", 1, 1, 1, 1}.validate()));
}

TEST(Fleet, RejectsDuplicatesAndEmpty) {
  EXPECT_THROW(Fleet(std::vector<NodeProfile>{}), InvalidInput);
  EXPECT_THROW(Fleet({{"a", 1, 1, 1, 1}, {"a", 2, 1, 1, 1}}), InvalidInput);
  const auto f = fleet_f3();
  EXPECT_EQ(f.size(), 3u);
  EXPECT_EQ(f.index_of("C"), 2u);
  EXPECT_FALSE(f.index_of("Z").has_value());
}

TEST(PlanObjective, MaxOverDesignated) {
  const auto f3 = fleet_f3();
  CodePlan single{1, 1, {"B"}, {"B"}, 0.0};
  EXPECT_DOUBLE_EQ(plan_objective(f3, single, 12), 13.0);
  CodePlan pair{2, 2, {"A", "B"}, {"A", "B"}, 0.0};
  EXPECT_DOUBLE_EQ(plan_objective(f3, pair, 12), 14.0);
}

TEST(PlanObjective, DesignatedFastestPairOfFour) {
  // Expected times 1, 5, 9, 3: communication only, eta makes computation
  // vanish.
  const Fleet fleet({{"n1", 0.5, 1, 1e12, 1},
                     {"n2", 2.5, 1, 1e12, 1},
                     {"n3", 4.5, 1, 1e12, 1},
                     {"n4", 1.5, 1, 1e12, 1}});
  CodePlan plan{2, 4, {"n1", "n2", "n3", "n4"}, {"n1", "n4"}, 0.0};
  EXPECT_NEAR(plan_objective(fleet, plan, 1.0), 3.0, 1e-9);
}

TEST(PlanObjective, PermutationInvariant) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto fleet = testing::random_fleet(rng);
    std::vector<std::string> ids;
    for (const auto& n : fleet) ids.push_back(n.id);
    const int k = static_cast<int>(1 + rng() % fleet.size());
    ids.resize(k);
    CodePlan plan{k, k, ids, ids, 0.0};
    const double D = testing::random_task_size(rng);
    const double base = plan_objective(fleet, plan, D);
    std::shuffle(plan.designated.begin(), plan.designated.end(), rng);
    EXPECT_EQ(plan_objective(fleet, plan, D), base);
  }
}

TEST(PlanObjective, MismatchErrors) {
  const auto f3 = fleet_f3();
  EXPECT_THROW(plan_objective(f3, CodePlan{1, 1, {"Z"}, {"Z"}, 0}, 12), PlanMismatch);
  EXPECT_THROW(plan_objective(f3, CodePlan{2, 1, {"A"}, {"A", "B"}, 0}, 12), PlanMismatch);
  EXPECT_THROW(plan_objective(f3, CodePlan{1, 2, {"A", "B"}, {"C"}, 0}, 12), PlanMismatch);
  EXPECT_THROW(plan_objective(f3, CodePlan{1, 4, {"A", "B", "C", "D"}, {"A"}, 0}, 12),
               PlanMismatch);
  EXPECT_THROW(plan_objective(f3, CodePlan{1, 2, {"A", "A"}, {"A"}, 0}, 12), PlanMismatch);
}

TEST(FleetHash, StableAndSensitive) {
  const auto a = fleet_f3();
  EXPECT_EQ(fleet_hash(a), fleet_hash(fleet_f3()));
  auto nodes = a.nodes();
  nodes[2].tau = 10.5;
  EXPECT_NE(fleet_hash(a), fleet_hash(Fleet(nodes)));
}

}  // namespace
}  // namespace cdcopt
