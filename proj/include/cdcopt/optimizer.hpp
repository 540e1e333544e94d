#ifndef CDCOPT_OPTIMIZER_HPP
#define CDCOPT_OPTIMIZER_HPP

#include <string>
#include <vector>

#include "cdcopt/model.hpp"

namespace cdcopt {

// Best designated set of size k and its objective.
struct SweepRecord {
  int k = 0;
  double best_T = 0.0;
  std::vector<std::string> selection;
};

struct ExactSolution {
  CodePlan plan;
  std::vector<SweepRecord> sweep;  // one record per k = 1..N
};

// Fastest k nodes at code dimension k, ties broken by fleet order.
SweepRecord best_for_k(const Fleet& fleet, double task_size, int k);

// Joint code and node selection. For fixed k the optimum designates the k
// nodes with the smallest expected time, so the solver sweeps k = 1..N and
// keeps the first strict improvement. Returned plans have n = k.
ExactSolution solve_exact(const Fleet& fleet, double task_size);

inline constexpr std::size_t kBruteForceMaxNodes = 20;

// Enumerates every non-empty subset as the designated set. Validation only.
CodePlan solve_bruteforce(const Fleet& fleet, double task_size);

// k = n = N.
CodePlan baseline_myopic(const Fleet& fleet, double task_size);

// k = n = 1 on the node with the smallest single-node expected time.
CodePlan baseline_onenode(const Fleet& fleet, double task_size);

// Lower real branch of the Lambert W function, defined on [-1/e, 0).
// Throws std::domain_error outside that interval.
double lambert_w_m1(double x);

enum class StaticRounding { kHalfUp, kFloor, kCeil };

StaticRounding parse_static_rounding(const std::string& name);
std::string to_string(StaticRounding mode);

// Code-rate ratio k/N of the homogeneous optimal static code for an average
// straggling coefficient: 1 + 1 / W_{-1}(-exp(-mean_alpha - 1)).
double static_code_ratio(double mean_alpha);

// k from the static code ratio (mean alpha over the fleet), rounded and
// clamped to [1, N].
int static_code_k(const Fleet& fleet,
                  StaticRounding rounding = StaticRounding::kHalfUp);

// Static code dimension combined with optimal node selection at that k.
CodePlan baseline_static(const Fleet& fleet, double task_size,
                         StaticRounding rounding = StaticRounding::kHalfUp);

// Adds up to `extra` redundant nodes to plan.selected, fastest first at the
// plan's k. Designated set and expected_T are unchanged.
CodePlan with_redundancy(const Fleet& fleet, const CodePlan& plan,
                         double task_size, int extra);

}  // namespace cdcopt

#endif  // CDCOPT_OPTIMIZER_HPP
