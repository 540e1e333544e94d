#include "cdcopt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace cdcopt::sim {

std::uint64_t sample_attempts(const NodeProfile& node, const RngStream& rng) {
  if (node.p >= 1.0) return 1;
  const double u = rng.uniform(fnv1a64(node.id), kCommDraw);
  // Inverse CDF of the geometric distribution on {1, 2, ...}.
  const double g = std::ceil(std::log(u) / std::log1p(-node.p));
  return g < 1.0 ? 1 : static_cast<std::uint64_t>(g);
}

double sample_comm_time(const NodeProfile& node, const RngStream& rng) {
  return node.tau * 2.0 * static_cast<double>(sample_attempts(node, rng));
}

CompSample sample_comp(const NodeProfile& node, double task_size, int k,
                       const RngStream& rng) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  const double d = task_size / k;
  const double rate = node.alpha * node.eta / d;
  const double u = rng.uniform(fnv1a64(node.id), kCompDraw);
  return {d / node.eta, -std::log(u) / rate};
}

double sample_comp_time(const NodeProfile& node, double task_size, int k,
                        const RngStream& rng) {
  return sample_comp(node, task_size, k, rng).total();
}

SimOutcome simulate_once(const Fleet& fleet, const CodePlan& plan,
                         double task_size, const RngStream& rng) {
  validate_plan(fleet, plan);
  SimOutcome out;
  out.nodes.reserve(plan.selected.size());
  std::vector<std::size_t> fleet_pos;
  for (const auto& id : plan.selected) {
    const auto idx = fleet.require_index(id);
    const auto& node = fleet[idx];
    const auto comp = sample_comp(node, task_size, plan.k, rng);
    NodeTiming timing;
    timing.id = id;
    timing.comm = sample_comm_time(node, rng);
    timing.comp_deterministic = comp.deterministic;
    timing.comp_stochastic = comp.stochastic;
    timing.total = timing.comm + comp.deterministic + comp.stochastic;
    out.nodes.push_back(std::move(timing));
    fleet_pos.push_back(idx);
  }
  std::vector<std::size_t> order(out.nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (out.nodes[a].total != out.nodes[b].total) {
      return out.nodes[a].total < out.nodes[b].total;
    }
    return fleet_pos[a] < fleet_pos[b];
  });
  for (auto i : order) out.finishers.push_back(out.nodes[i].id);
  out.realized_T = out.nodes[order[plan.k - 1]].total;
  return out;
}

double SimStats::standard_error() const {
  return count > 0 ? stddev / std::sqrt(static_cast<double>(count)) : 0.0;
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw InvalidInput("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

SimStats run_replications(const Fleet& fleet, const CodePlan& plan,
                          double task_size, std::size_t reps,
                          std::uint64_t seed, unsigned threads) {
  if (reps == 0) throw InvalidInput("replication count must be at least 1");
  validate_plan(fleet, plan);
  const std::size_t width = plan.selected.size();

  std::vector<double> realized(reps);
  // Per replication, per selected node: comm, det, stoch shares.
  std::vector<double> shares(reps * width * 3);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const auto outcome = simulate_once(fleet, plan, task_size, RngStream(seed, r));
      realized[r] = outcome.realized_T;
      for (std::size_t j = 0; j < width; ++j) {
        const auto& nt = outcome.nodes[j];
        double* dst = &shares[(r * width + j) * 3];
        dst[0] = nt.comm / nt.total;
        dst[1] = nt.comp_deterministic / nt.total;
        dst[2] = nt.comp_stochastic / nt.total;
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, reps);
  if (workers == 1) {
    work(0, reps);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (reps + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(reps, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(work, begin, end);
    }
  }

  SimStats stats;
  stats.count = reps;
  stats.samples = realized;
  double sum = 0.0;
  for (double v : realized) sum += v;
  stats.mean = sum / static_cast<double>(reps);
  double sq = 0.0;
  for (double v : realized) sq += (v - stats.mean) * (v - stats.mean);
  stats.stddev = reps > 1 ? std::sqrt(sq / static_cast<double>(reps - 1)) : 0.0;

  auto sorted = realized;
  std::sort(sorted.begin(), sorted.end());
  stats.min = sorted.front();
  stats.max = sorted.back();
  stats.p50 = quantile_sorted(sorted, 0.50);
  stats.p90 = quantile_sorted(sorted, 0.90);
  stats.p99 = quantile_sorted(sorted, 0.99);

  stats.shares.resize(width);
  for (std::size_t j = 0; j < width; ++j) {
    auto& s = stats.shares[j];
    s.id = plan.selected[j];
    for (std::size_t r = 0; r < reps; ++r) {
      const double* src = &shares[(r * width + j) * 3];
      s.comm += src[0];
      s.comp_deterministic += src[1];
      s.comp_stochastic += src[2];
    }
    s.comm /= static_cast<double>(reps);
    s.comp_deterministic /= static_cast<double>(reps);
    s.comp_stochastic /= static_cast<double>(reps);
  }
  return stats;
}

}  // namespace cdcopt::sim
