#ifndef CDCOPT_MILP_HPP
#define CDCOPT_MILP_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cdcopt/model.hpp"

namespace cdcopt::milp {

enum class VarKind { kBinary, kInteger, kContinuous };
enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

struct Term {
  std::size_t var = 0;  // index into MilpModel::variables
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kEqual;
  double rhs = 0.0;
};

// Linearized joint coding / node selection model. Variable layout for a
// fleet of N nodes:
//   c_1..c_N  selection binaries
//   x_1..x_N  designation binaries
//   y_1..y_N  one-hot encoding of k
//   t_1..t_N  per-node completion bounds, t_i >= 0
//   T, n, k
// Constraint rows, in order:
//   count_n     sum c_i = n
//   select_i    x_i <= c_i
//   count_k     sum x_i = k
//   makespan_i  T >= t_i
//   k_le_n      k <= n
//   n_max       n <= N
//   k_onehot    sum j y_j = k
//   onehot      sum y_j = 1
//   time_i      t_i + (1 - x_i) M >= 2 tau_i/p_i + sum_j y_j E[comp_i](j)
// Per-node makespan rows and the two-term computation expectation are
// announced in `notes`.
struct MilpModel {
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<Term> objective;  // minimized
  double big_m = 0.0;

  // Export metadata.
  std::vector<std::string> node_ids;
  double task_size = 0.0;
  std::uint64_t fleet_hash = 0;
  std::vector<std::string> notes;

  std::size_t node_count() const { return node_ids.size(); }
  std::size_t var_index(const std::string& name) const;  // throws if absent

  std::size_t c(std::size_t i) const { return i; }
  std::size_t x(std::size_t i) const { return node_count() + i; }
  std::size_t y(std::size_t j) const { return 2 * node_count() + j; }  // j is 0-based, encodes k = j+1
  std::size_t t(std::size_t i) const { return 3 * node_count() + i; }
  std::size_t T() const { return 4 * node_count(); }
  std::size_t n() const { return 4 * node_count() + 1; }
  std::size_t k() const { return 4 * node_count() + 2; }
};

// Largest single-node expected time (k = 1); every time_i right-hand side is
// bounded by it.
double big_m(const Fleet& fleet, double task_size);

MilpModel build_milp(const Fleet& fleet, double task_size);

// Candidate values for the model variables. Vectors are indexed by fleet
// position; y[j] encodes k = j + 1.
struct Assignment {
  double n = 0.0;
  double k = 0.0;
  std::vector<double> c;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> t;
  double T = 0.0;
};

// Dense value vector in model variable order. Throws InvalidInput when
// the assignment leaves a model variable without a value.
std::vector<double> to_values(const MilpModel& model, const Assignment& a);

struct Violation {
  std::string constraint;  // row name, or "bound:<var>" / "integrality:<var>"
  double slack = 0.0;      // magnitude of the violation
};

struct Verdict {
  std::vector<Violation> linear_violations;     // rows and bounds of the model
  std::vector<Violation> nonlinear_violations;  // t_i + (1-x_i)M >= E[t_i](k)
  bool linear_feasible = false;
  bool nonlinear_feasible = false;
  // max_i |nonlinear rhs_i - linear rhs_i|; infinity if k is not an integer
  // in [1, N].
  double max_rhs_discrepancy = 0.0;
  std::vector<double> nonlinear_rhs;
  std::vector<double> linear_rhs;
};

Verdict check_assignment(const MilpModel& model, const Fleet& fleet,
                         double task_size, const Assignment& a,
                         double tolerance = 1e-9);

// Row activity sum(coef * value).
double activity(const Constraint& row, const std::vector<double>& values);
bool satisfied(const Constraint& row, const std::vector<double>& values,
               double tolerance);

inline constexpr std::size_t kMaxNameLength = 255;

// Free-format MPS. Rows and columns in model order, numbers at 12
// significant digits. Throws InvalidInput for names over kMaxNameLength.
std::string export_mps(const MilpModel& model);

// CPLEX LP text format, same ordering and number formatting as MPS.
std::string export_lp(const MilpModel& model);

// Shared numeric formatter (%.12g, with "Inf"/"-Inf").
std::string format_number(double value);

}  // namespace cdcopt::milp

#endif  // CDCOPT_MILP_HPP
