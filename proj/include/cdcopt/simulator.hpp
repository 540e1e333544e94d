#ifndef CDCOPT_SIMULATOR_HPP
#define CDCOPT_SIMULATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cdcopt/model.hpp"
#include "cdcopt/random.hpp"

namespace cdcopt::sim {

// Per-node draws are keyed by node id, so two plans simulated with the same
// (seed, replication) see identical times on every node they share.
inline constexpr std::uint64_t kCommDraw = 0;
inline constexpr std::uint64_t kCompDraw = 1;

// tau * 2G with G ~ Geometric(p) on {1, 2, ...}; the download and upload
// attempt counts are one shared draw.
double sample_comm_time(const NodeProfile& node, const RngStream& rng);

// Number of attempts behind sample_comm_time.
std::uint64_t sample_attempts(const NodeProfile& node, const RngStream& rng);

struct CompSample {
  double deterministic = 0.0;  // d / eta
  double stochastic = 0.0;     // Exp(alpha eta / d)
  double total() const { return deterministic + stochastic; }
};

CompSample sample_comp(const NodeProfile& node, double task_size, int k,
                       const RngStream& rng);

// d/eta + Exp(lambda) with d = D/k, lambda = alpha eta / d.
double sample_comp_time(const NodeProfile& node, double task_size, int k,
                        const RngStream& rng);

struct NodeTiming {
  std::string id;
  double comm = 0.0;
  double comp_deterministic = 0.0;
  double comp_stochastic = 0.0;
  double total = 0.0;
};

struct SimOutcome {
  double realized_T = 0.0;
  std::vector<NodeTiming> nodes;       // plan.selected order
  std::vector<std::string> finishers;  // ids sorted by total, ties by fleet order
};

// k-th order statistic of the selected nodes' totals.
SimOutcome simulate_once(const Fleet& fleet, const CodePlan& plan,
                         double task_size, const RngStream& rng);

struct ComponentShares {
  std::string id;
  double comm = 0.0;
  double comp_deterministic = 0.0;
  double comp_stochastic = 0.0;
};

struct SimStats {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1); 0 for a single rep
  double min = 0.0;
  double max = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  double p99 = 0.0;
  // Mean over replications of component / node total, per selected node.
  std::vector<ComponentShares> shares;
  std::vector<double> samples;  // realized_T by replication index

  double standard_error() const;
};

// Linear-interpolation quantile of an ascending sample.
double quantile_sorted(const std::vector<double>& sorted, double q);

// Replication r uses RngStream(seed, r). `threads` only changes wall time:
// aggregation runs in replication order after all outcomes are computed.
SimStats run_replications(const Fleet& fleet, const CodePlan& plan,
                          double task_size, std::size_t reps,
                          std::uint64_t seed, unsigned threads = 1);

}  // namespace cdcopt::sim

#endif  // CDCOPT_SIMULATOR_HPP
