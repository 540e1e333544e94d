#include "cdcopt/optimizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace cdcopt {
namespace {

void require_nonempty(const Fleet& fleet) {
  if (fleet.empty()) throw InvalidInput("fleet must contain at least one node");
}

void require_task_size(double task_size) {
  if (!(std::isfinite(task_size) && task_size > 0.0)) {
    throw InvalidInput("task size must be positive");
  }
}

// Fleet indices ordered by expected time at k; stable on fleet order.
std::vector<std::size_t> rank_nodes(const Fleet& fleet, double task_size,
                                    int k, std::vector<double>& times) {
  times.resize(fleet.size());
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    times[i] = expected_node_time(fleet[i], task_size, k);
  }
  std::vector<std::size_t> order(fleet.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
  return order;
}

CodePlan plan_from_indices(const Fleet& fleet, const std::vector<std::size_t>& idx,
                           double expected_T) {
  CodePlan plan;
  plan.k = plan.n = static_cast<int>(idx.size());
  for (auto i : idx) plan.designated.push_back(fleet[i].id);
  plan.selected = plan.designated;
  plan.expected_T = expected_T;
  return plan;
}

CodePlan plan_from_record(const SweepRecord& record) {
  CodePlan plan;
  plan.k = plan.n = record.k;
  plan.designated = record.selection;
  plan.selected = record.selection;
  plan.expected_T = record.best_T;
  return plan;
}

}  // namespace

SweepRecord best_for_k(const Fleet& fleet, double task_size, int k) {
  require_nonempty(fleet);
  require_task_size(task_size);
  if (k < 1 || k > static_cast<int>(fleet.size())) {
    throw InvalidInput("k must lie in [1, N]");
  }
  std::vector<double> times;
  const auto order = rank_nodes(fleet, task_size, k, times);
  SweepRecord record;
  record.k = k;
  for (int r = 0; r < k; ++r) {
    record.selection.push_back(fleet[order[r]].id);
    record.best_T = std::max(record.best_T, times[order[r]]);
  }
  return record;
}

ExactSolution solve_exact(const Fleet& fleet, double task_size) {
  require_nonempty(fleet);
  require_task_size(task_size);
  ExactSolution solution;
  const int fleet_size = static_cast<int>(fleet.size());
  solution.sweep.reserve(fleet.size());
  std::size_t best = 0;
  for (int k = 1; k <= fleet_size; ++k) {
    solution.sweep.push_back(best_for_k(fleet, task_size, k));
    if (solution.sweep.back().best_T < solution.sweep[best].best_T) {
      best = solution.sweep.size() - 1;
    }
  }
  solution.plan = plan_from_record(solution.sweep[best]);
  return solution;
}

CodePlan solve_bruteforce(const Fleet& fleet, double task_size) {
  require_nonempty(fleet);
  require_task_size(task_size);
  if (fleet.size() > kBruteForceMaxNodes) {
    throw InvalidInput("solve_bruteforce refuses fleets larger than " +
                       std::to_string(kBruteForceMaxNodes) + " nodes");
  }
  const std::size_t n = fleet.size();
  // times[k-1][i]
  std::vector<std::vector<double>> times(n, std::vector<double>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      times[k - 1][i] = expected_node_time(fleet[i], task_size, static_cast<int>(k));
    }
  }
  double best_T = std::numeric_limits<double>::infinity();
  std::uint32_t best_mask = 0;
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    const int k = std::popcount(mask);
    const auto& row = times[k - 1];
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) worst = std::max(worst, row[i]);
    }
    if (worst < best_T) {
      best_T = worst;
      best_mask = mask;
    }
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (best_mask & (std::uint32_t{1} << i)) idx.push_back(i);
  }
  return plan_from_indices(fleet, idx, best_T);
}

CodePlan baseline_myopic(const Fleet& fleet, double task_size) {
  require_nonempty(fleet);
  return plan_from_record(
      best_for_k(fleet, task_size, static_cast<int>(fleet.size())));
}

CodePlan baseline_onenode(const Fleet& fleet, double task_size) {
  require_nonempty(fleet);
  return plan_from_record(best_for_k(fleet, task_size, 1));
}

StaticRounding parse_static_rounding(const std::string& name) {
  if (name == "half-up") return StaticRounding::kHalfUp;
  if (name == "floor") return StaticRounding::kFloor;
  if (name == "ceil") return StaticRounding::kCeil;
  throw InvalidInput("unknown static rounding mode '" + name +
                     "' (expected half-up, floor or ceil)");
}

std::string to_string(StaticRounding mode) {
  switch (mode) {
    case StaticRounding::kHalfUp: return "half-up";
    case StaticRounding::kFloor: return "floor";
    case StaticRounding::kCeil: return "ceil";
  }
  return "half-up";
}

double static_code_ratio(double mean_alpha) {
  if (!(mean_alpha > 0.0)) throw InvalidInput("mean alpha must be positive");
  return 1.0 + 1.0 / lambert_w_m1(-std::exp(-mean_alpha - 1.0));
}

int static_code_k(const Fleet& fleet, StaticRounding rounding) {
  require_nonempty(fleet);
  double alpha_sum = 0.0;
  for (const auto& node : fleet) alpha_sum += node.alpha;
  const double mean_alpha = alpha_sum / static_cast<double>(fleet.size());
  const double scaled = static_code_ratio(mean_alpha) * static_cast<double>(fleet.size());
  double rounded = 0.0;
  switch (rounding) {
    case StaticRounding::kHalfUp: rounded = std::floor(scaled + 0.5); break;
    case StaticRounding::kFloor: rounded = std::floor(scaled); break;
    case StaticRounding::kCeil: rounded = std::ceil(scaled); break;
  }
  return static_cast<int>(
      std::clamp(rounded, 1.0, static_cast<double>(fleet.size())));
}

CodePlan baseline_static(const Fleet& fleet, double task_size,
                         StaticRounding rounding) {
  const int k = static_code_k(fleet, rounding);
  return plan_from_record(best_for_k(fleet, task_size, k));
}

CodePlan with_redundancy(const Fleet& fleet, const CodePlan& plan,
                         double task_size, int extra) {
  validate_plan(fleet, plan);
  if (extra < 0) throw InvalidInput("n-extra must be non-negative");
  CodePlan out = plan;
  if (extra == 0) return out;
  std::vector<double> times;
  const auto order = rank_nodes(fleet, task_size, plan.k, times);
  for (auto i : order) {
    if (extra == 0) break;
    const auto& id = fleet[i].id;
    if (std::find(out.selected.begin(), out.selected.end(), id) ==
        out.selected.end()) {
      out.selected.push_back(id);
      --extra;
    }
  }
  out.n = static_cast<int>(out.selected.size());
  return out;
}

}  // namespace cdcopt
