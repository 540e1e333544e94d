#include "cdcopt/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

namespace cdcopt {

void NodeProfile::validate() const {
  auto fail = [this](const char* field, const char* rule) {
    throw InvalidInput("node '" + id + "': " + field + " " + rule);
  };
  if (!(std::isfinite(tau) && tau > 0.0)) fail("tau", "must be positive");
  if (!(p > 0.0 && p <= 1.0)) fail("p", "must lie in (0, 1]");
  if (!(std::isfinite(eta) && eta > 0.0)) fail("eta", "must be positive");
  if (!(std::isfinite(alpha) && alpha > 0.0)) fail("alpha", "must be positive");
}

Fleet::Fleet(std::vector<NodeProfile> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw InvalidInput("fleet must contain at least one node");
  std::unordered_set<std::string> seen;
  for (const auto& node : nodes_) {
    node.validate();
    if (!seen.insert(node.id).second) {
      throw InvalidInput("duplicate node id '" + node.id + "'");
    }
  }
}

std::optional<std::size_t> Fleet::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t Fleet::require_index(const std::string& id) const {
  auto idx = index_of(id);
  if (!idx) throw PlanMismatch("node '" + id + "' is not part of the fleet");
  return *idx;
}

double expected_comm_time(const NodeProfile& node) {
  return 2.0 * node.tau / node.p;
}

double expected_comp_time(const NodeProfile& node, double task_size, int k) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  const double deterministic = task_size / (k * node.eta);
  const double stochastic = task_size / (k * node.eta * node.alpha);
  return deterministic + stochastic;
}

double expected_node_time(const NodeProfile& node, double task_size, int k) {
  return expected_comm_time(node) + expected_comp_time(node, task_size, k);
}

void validate_plan(const Fleet& fleet, const CodePlan& plan) {
  const int fleet_size = static_cast<int>(fleet.size());
  if (plan.k < 1 || plan.k > plan.n || plan.n > fleet_size) {
    throw PlanMismatch("plan violates 1 <= k <= n <= N (k=" +
                       std::to_string(plan.k) + ", n=" +
                       std::to_string(plan.n) + ", N=" +
                       std::to_string(fleet_size) + ")");
  }
  if (plan.selected.size() != static_cast<std::size_t>(plan.n)) {
    throw PlanMismatch("plan selects " + std::to_string(plan.selected.size()) +
                       " nodes but n=" + std::to_string(plan.n));
  }
  if (plan.designated.size() != static_cast<std::size_t>(plan.k)) {
    throw PlanMismatch("plan designates " +
                       std::to_string(plan.designated.size()) +
                       " nodes but k=" + std::to_string(plan.k));
  }
  std::unordered_set<std::string> selected;
  for (const auto& id : plan.selected) {
    fleet.require_index(id);
    if (!selected.insert(id).second) {
      throw PlanMismatch("node '" + id + "' selected more than once");
    }
  }
  std::unordered_set<std::string> designated;
  for (const auto& id : plan.designated) {
    if (!selected.count(id)) {
      fleet.require_index(id);
      throw PlanMismatch("designated node '" + id + "' is not selected");
    }
    if (!designated.insert(id).second) {
      throw PlanMismatch("node '" + id + "' designated more than once");
    }
  }
}

double plan_objective(const Fleet& fleet, const CodePlan& plan,
                      double task_size) {
  validate_plan(fleet, plan);
  double worst = 0.0;
  for (const auto& id : plan.designated) {
    const auto& node = fleet[fleet.require_index(id)];
    worst = std::max(worst, expected_node_time(node, task_size, plan.k));
  }
  return worst;
}

std::uint64_t fleet_hash(const Fleet& fleet) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  char buf[128];
  for (const auto& node : fleet) {
    mix(node.id);
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g\n", node.tau,
                  node.p, node.eta, node.alpha);
    mix(buf);
  }
  return h;
}

}  // namespace cdcopt
