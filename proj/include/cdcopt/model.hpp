#ifndef CDCOPT_MODEL_HPP
#define CDCOPT_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdcopt {

// Raised when a value violates a documented domain invariant.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a plan references nodes the fleet does not contain, or its
// (n, k, selected, designated) fields are inconsistent.
class PlanMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One edge node. All times are seconds.
//   tau   - time of a single upload or download attempt
//   p     - per-attempt transmission success probability, in (0, 1]
//   eta   - computations per second
//   alpha - straggling coefficient of the exponential computation term
struct NodeProfile {
  std::string id;
  double tau = 1.0;
  double p = 1.0;
  double eta = 1.0;
  double alpha = 1.0;

  // Throws InvalidInput naming the offending field.
  void validate() const;

  bool operator==(const NodeProfile&) const = default;
};

// Ordered set of candidate nodes. Iteration order is the canonical
// tie-break order everywhere downstream.
class Fleet {
 public:
  Fleet() = default;
  explicit Fleet(std::vector<NodeProfile> nodes);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const NodeProfile& operator[](std::size_t i) const { return nodes_[i]; }
  const std::vector<NodeProfile>& nodes() const { return nodes_; }
  auto begin() const { return nodes_.begin(); }
  auto end() const { return nodes_.end(); }

  std::optional<std::size_t> index_of(const std::string& id) const;
  // Throws PlanMismatch for unknown ids.
  std::size_t require_index(const std::string& id) const;

  bool operator==(const Fleet&) const = default;

 private:
  std::vector<NodeProfile> nodes_;
};

struct TaskSpec {
  std::string id;
  double size = 1.0;  // total computations D

  bool operator==(const TaskSpec&) const = default;
};

struct CodePlan {
  int k = 0;
  int n = 0;
  std::vector<std::string> selected;    // c_i = 1
  std::vector<std::string> designated;  // x_i = 1, subset of selected
  double expected_T = 0.0;
};

// E[t^s] = 2 tau / p.
double expected_comm_time(const NodeProfile& node);

// E[t^d] + E[t^r] = D/(k eta) + D/(k eta alpha).
double expected_comp_time(const NodeProfile& node, double task_size, int k);

double expected_node_time(const NodeProfile& node, double task_size, int k);

// Checks the CodePlan invariants against the fleet (except expected_T).
void validate_plan(const Fleet& fleet, const CodePlan& plan);

// Maximum expected node time over the designated set.
double plan_objective(const Fleet& fleet, const CodePlan& plan,
                      double task_size);

// Stable 64-bit digest of the fleet contents (FNV-1a over a canonical text
// rendering). Used to tag exported models and reports.
std::uint64_t fleet_hash(const Fleet& fleet);

}  // namespace cdcopt

#endif  // CDCOPT_MODEL_HPP
