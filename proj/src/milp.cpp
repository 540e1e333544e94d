#include "cdcopt/milp.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cdcopt::milp {
namespace {

const char* kNoticeSum =
    "makespan rows are emitted per node as T >= t_i (max semantics); a single "
    "summed row T >= sum_i t_i would overcount whenever k > 1";
const char* kNoticeDenominator =
    "time row coefficients use D/(j eta_i) + D/(j eta_i alpha_i), the expected "
    "deterministic plus exponential computation time; the one-term form "
    "D/(k eta_i (1 + alpha_i)) is not used";

std::size_t add_var(MilpModel& m, std::string name, VarKind kind, double lo,
                    double hi) {
  m.variables.push_back({std::move(name), kind, lo, hi});
  return m.variables.size() - 1;
}

bool is_integral_kind(VarKind kind) { return kind != VarKind::kContinuous; }

void check_name(const std::string& name, const char* what) {
  if (name.empty() || name.size() > kMaxNameLength) {
    throw InvalidInput(std::string(what) + " name '" + name.substr(0, 40) +
                       (name.size() > 40 ? "..." : "") + "' exceeds the " +
                       std::to_string(kMaxNameLength) +
                       "-character limit or is empty");
  }
  if (name.find_first_of(" \t\r\n") != std::string::npos) {
    throw InvalidInput(std::string(what) + " name '" + name +
                       "' contains whitespace");
  }
}

void check_names(const MilpModel& model) {
  for (const auto& v : model.variables) check_name(v.name, "variable");
  for (const auto& r : model.constraints) check_name(r.name, "constraint");
}

void write_header(std::ostringstream& out, const MilpModel& model,
                  const char* prefix) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, model.fleet_hash);
  out << prefix << " cdcopt linearized coding/node-selection model\n";
  out << prefix << " fleet_hash " << hash << "\n";
  out << prefix << " nodes " << model.node_count() << "\n";
  out << prefix << " task_size " << format_number(model.task_size) << "\n";
  out << prefix << " big_m " << format_number(model.big_m) << "\n";
  for (std::size_t i = 0; i < model.node_ids.size(); ++i) {
    out << prefix << " node " << (i + 1) << " " << model.node_ids[i] << "\n";
  }
  for (const auto& note : model.notes) out << prefix << " notice: " << note << "\n";
}

}  // namespace

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "Inf" : "-Inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value == 0.0 ? 0.0 : value);
  return buf;
}

std::size_t MilpModel::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == name) return i;
  }
  throw InvalidInput("model has no variable '" + name + "'");
}

double big_m(const Fleet& fleet, double task_size) {
  double m = 0.0;
  for (const auto& node : fleet) {
    m = std::max(m, expected_node_time(node, task_size, 1));
  }
  return m;
}

MilpModel build_milp(const Fleet& fleet, double task_size) {
  if (fleet.empty()) throw InvalidInput("fleet must contain at least one node");
  if (!(std::isfinite(task_size) && task_size > 0.0)) {
    throw InvalidInput("task size must be positive");
  }
  const std::size_t N = fleet.size();
  const double Nd = static_cast<double>(N);
  MilpModel m;
  m.task_size = task_size;
  m.fleet_hash = fleet_hash(fleet);
  m.big_m = big_m(fleet, task_size);
  m.notes = {kNoticeSum, kNoticeDenominator};
  for (const auto& node : fleet) m.node_ids.push_back(node.id);

  auto idx = [](const char* prefix, std::size_t i) {
    return std::string(prefix) + std::to_string(i + 1);
  };
  for (std::size_t i = 0; i < N; ++i) add_var(m, idx("c_", i), VarKind::kBinary, 0, 1);
  for (std::size_t i = 0; i < N; ++i) add_var(m, idx("x_", i), VarKind::kBinary, 0, 1);
  for (std::size_t j = 0; j < N; ++j) add_var(m, idx("y_", j), VarKind::kBinary, 0, 1);
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < N; ++i) add_var(m, idx("t_", i), VarKind::kContinuous, 0, inf);
  add_var(m, "T", VarKind::kContinuous, 0, inf);
  add_var(m, "n", VarKind::kInteger, 1, Nd);
  add_var(m, "k", VarKind::kInteger, 1, Nd);

  auto& rows = m.constraints;
  {
    Constraint r{"count_n", {}, Sense::kEqual, 0.0};
    for (std::size_t i = 0; i < N; ++i) r.terms.push_back({m.c(i), 1.0});
    r.terms.push_back({m.n(), -1.0});
    rows.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < N; ++i) {
    rows.push_back({idx("select_", i), {{m.x(i), 1.0}, {m.c(i), -1.0}},
                    Sense::kLessEqual, 0.0});
  }
  {
    Constraint r{"count_k", {}, Sense::kEqual, 0.0};
    for (std::size_t i = 0; i < N; ++i) r.terms.push_back({m.x(i), 1.0});
    r.terms.push_back({m.k(), -1.0});
    rows.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < N; ++i) {
    rows.push_back({idx("makespan_", i), {{m.T(), 1.0}, {m.t(i), -1.0}},
                    Sense::kGreaterEqual, 0.0});
  }
  rows.push_back({"k_le_n", {{m.k(), 1.0}, {m.n(), -1.0}}, Sense::kLessEqual, 0.0});
  rows.push_back({"n_max", {{m.n(), 1.0}}, Sense::kLessEqual, Nd});
  {
    Constraint r11{"k_onehot", {}, Sense::kEqual, 0.0};
    Constraint r12{"onehot", {}, Sense::kEqual, 1.0};
    for (std::size_t j = 0; j < N; ++j) {
      r11.terms.push_back({m.y(j), static_cast<double>(j + 1)});
      r12.terms.push_back({m.y(j), 1.0});
    }
    r11.terms.push_back({m.k(), -1.0});
    rows.push_back(std::move(r11));
    rows.push_back(std::move(r12));
  }
  // t_i + (1 - x_i) M >= 2 tau/p + sum_j y_j (D/(j eta) + D/(j eta alpha))
  //   <=>  t_i - M x_i - sum_j coef_ij y_j >= 2 tau/p - M
  for (std::size_t i = 0; i < N; ++i) {
    const auto& node = fleet[i];
    Constraint r{idx("time_", i), {}, Sense::kGreaterEqual,
                 expected_comm_time(node) - m.big_m};
    r.terms.push_back({m.t(i), 1.0});
    r.terms.push_back({m.x(i), -m.big_m});
    for (std::size_t j = 0; j < N; ++j) {
      const double jd = static_cast<double>(j + 1);
      const double coef = task_size / (jd * node.eta) +
                          task_size / (jd * node.eta * node.alpha);
      r.terms.push_back({m.y(j), -coef});
    }
    rows.push_back(std::move(r));
  }
  m.objective = {{m.T(), 1.0}};
  return m;
}

std::vector<double> to_values(const MilpModel& model, const Assignment& a) {
  const std::size_t N = model.node_count();
  auto need = [N](const std::vector<double>& v, const char* name) {
    if (v.size() < N) {
      throw InvalidInput(std::string("assignment is missing values for ") +
                         name + "_" + std::to_string(v.size() + 1));
    }
  };
  need(a.c, "c");
  need(a.x, "x");
  need(a.y, "y");
  need(a.t, "t");
  if (model.variables.size() != 4 * N + 3) {
    throw InvalidInput("model does not follow the coding/node-selection layout");
  }
  std::vector<double> values(model.variables.size());
  for (std::size_t i = 0; i < N; ++i) {
    values[model.c(i)] = a.c[i];
    values[model.x(i)] = a.x[i];
    values[model.y(i)] = a.y[i];
    values[model.t(i)] = a.t[i];
  }
  values[model.T()] = a.T;
  values[model.n()] = a.n;
  values[model.k()] = a.k;
  return values;
}

double activity(const Constraint& row, const std::vector<double>& values) {
  double sum = 0.0;
  for (const auto& term : row.terms) sum += term.coef * values.at(term.var);
  return sum;
}

namespace {

// Positive amount by which the row is violated, 0 when satisfied.
double violation(const Constraint& row, const std::vector<double>& values) {
  const double lhs = activity(row, values);
  switch (row.sense) {
    case Sense::kLessEqual: return std::max(0.0, lhs - row.rhs);
    case Sense::kGreaterEqual: return std::max(0.0, row.rhs - lhs);
    case Sense::kEqual: return std::fabs(lhs - row.rhs);
  }
  return 0.0;
}

double row_tolerance(const Constraint& row, double tolerance) {
  return tolerance * std::max(1.0, std::fabs(row.rhs));
}

bool only_in_linearization(const std::string& name) {
  return name == "k_onehot" || name == "onehot" || name.rfind("time_", 0) == 0 ||
         name.rfind("bound:y_", 0) == 0 || name.rfind("integrality:y_", 0) == 0;
}

}  // namespace

bool satisfied(const Constraint& row, const std::vector<double>& values,
               double tolerance) {
  return violation(row, values) <= row_tolerance(row, tolerance);
}

Verdict check_assignment(const MilpModel& model, const Fleet& fleet,
                         double task_size, const Assignment& a,
                         double tolerance) {
  if (fleet.size() != model.node_count()) {
    throw PlanMismatch("fleet size does not match the model");
  }
  const auto values = to_values(model, a);
  const std::size_t N = model.node_count();
  Verdict verdict;

  std::vector<Violation> shared;  // rows and bounds common to both forms
  for (std::size_t v = 0; v < model.variables.size(); ++v) {
    const auto& var = model.variables[v];
    const double value = values[v];
    if (value < var.lower - tolerance) {
      verdict.linear_violations.push_back({"bound:" + var.name, var.lower - value});
    } else if (value > var.upper + tolerance) {
      verdict.linear_violations.push_back({"bound:" + var.name, value - var.upper});
    }
    if (is_integral_kind(var.kind) &&
        std::fabs(value - std::round(value)) > tolerance) {
      verdict.linear_violations.push_back(
          {"integrality:" + var.name, std::fabs(value - std::round(value))});
    }
  }
  for (const auto& row : model.constraints) {
    const double amount = violation(row, values);
    if (amount > row_tolerance(row, tolerance)) {
      verdict.linear_violations.push_back({row.name, amount});
    }
  }
  for (const auto& v : verdict.linear_violations) {
    if (!only_in_linearization(v.constraint)) shared.push_back(v);
  }

  // Linear right-hand side recovered from the time rows:
  //   2 tau/p + sum_j coef_ij y_j = rhs + M + sum over y terms of (-coef) y_j.
  verdict.linear_rhs.assign(N, 0.0);
  std::vector<const Constraint*> linear_rows(N, nullptr);
  for (const auto& row : model.constraints) {
    if (row.name.rfind("time_", 0) != 0) continue;
    const auto i = std::stoul(row.name.substr(5));
    if (i >= 1 && i <= N) linear_rows[i - 1] = &row;
  }
  for (std::size_t i = 0; i < N; ++i) {
    if (!linear_rows[i]) {
      throw InvalidInput("model has no row time_" + std::to_string(i + 1));
    }
    const auto& row = *linear_rows[i];
    double rhs = row.rhs + model.big_m;
    for (const auto& term : row.terms) {
      if (term.var >= model.y(0) && term.var < model.y(0) + N) {
        rhs -= term.coef * values[term.var];
      }
    }
    verdict.linear_rhs[i] = rhs;
  }

  const double k_rounded = std::round(a.k);
  const bool k_valid = std::fabs(a.k - k_rounded) <= tolerance &&
                       k_rounded >= 1.0 &&
                       k_rounded <= static_cast<double>(N);
  verdict.nonlinear_violations = shared;
  if (k_valid) {
    const int k = static_cast<int>(k_rounded);
    verdict.nonlinear_rhs.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double rhs = expected_node_time(fleet[i], task_size, k);
      verdict.nonlinear_rhs[i] = rhs;
      verdict.max_rhs_discrepancy =
          std::max(verdict.max_rhs_discrepancy,
                   std::fabs(rhs - verdict.linear_rhs[i]));
      const double lhs = a.t[i] + (1.0 - a.x[i]) * model.big_m;
      if (rhs - lhs > tolerance * std::max(1.0, rhs)) {
        verdict.nonlinear_violations.push_back({"time_nl_" + std::to_string(i + 1), rhs - lhs});
      }
    }
  } else {
    verdict.max_rhs_discrepancy = std::numeric_limits<double>::infinity();
    verdict.nonlinear_violations.push_back({"domain:k", std::fabs(a.k - k_rounded)});
  }
  verdict.linear_feasible = verdict.linear_violations.empty();
  verdict.nonlinear_feasible = verdict.nonlinear_violations.empty();
  return verdict;
}

std::string export_mps(const MilpModel& model) {
  check_names(model);
  std::ostringstream out;
  write_header(out, model, "*");
  out << "NAME cdcopt_p2\n";
  out << "ROWS\n";
  out << " N obj\n";
  for (const auto& row : model.constraints) {
    const char* s = row.sense == Sense::kLessEqual      ? "L"
                    : row.sense == Sense::kGreaterEqual ? "G"
                                                        : "E";
    out << " " << s << " " << row.name << "\n";
  }

  // Column-major view, entries in row order with the objective first.
  std::vector<std::vector<std::pair<std::string, double>>> columns(model.variables.size());
  for (const auto& term : model.objective) columns[term.var].push_back({"obj", term.coef});
  for (const auto& row : model.constraints) {
    for (const auto& term : row.terms) {
      if (term.coef != 0.0) columns[term.var].push_back({row.name, term.coef});
    }
  }

  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (std::size_t v = 0; v < model.variables.size(); ++v) {
    const auto& var = model.variables[v];
    const bool integral = is_integral_kind(var.kind);
    if (integral != in_int) {
      out << "    MARKER" << marker++ << " 'MARKER' "
          << (integral ? "'INTORG'" : "'INTEND'") << "\n";
      in_int = integral;
    }
    for (const auto& [row, coef] : columns[v]) {
      out << "    " << var.name << " " << row << " " << format_number(coef) << "\n";
    }
  }
  if (in_int) out << "    MARKER" << marker++ << " 'MARKER' 'INTEND'\n";

  out << "RHS\n";
  for (const auto& row : model.constraints) {
    if (row.rhs != 0.0) out << "    RHS " << row.name << " " << format_number(row.rhs) << "\n";
  }

  out << "BOUNDS\n";
  for (const auto& var : model.variables) {
    switch (var.kind) {
      case VarKind::kBinary:
        out << " BV BND " << var.name << "\n";
        break;
      case VarKind::kInteger:
        out << " LI BND " << var.name << " " << format_number(var.lower) << "\n";
        if (std::isfinite(var.upper)) {
          out << " UI BND " << var.name << " " << format_number(var.upper) << "\n";
        }
        break;
      case VarKind::kContinuous:
        if (std::isinf(var.lower)) {
          out << " MI BND " << var.name << "\n";
        } else {
          out << " LO BND " << var.name << " " << format_number(var.lower) << "\n";
        }
        if (std::isfinite(var.upper)) {
          out << " UP BND " << var.name << " " << format_number(var.upper) << "\n";
        }
        break;
    }
  }
  out << "ENDATA\n";
  return out.str();
}

namespace {

void write_lp_terms(std::ostringstream& out, const MilpModel& model,
                    const std::vector<Term>& terms, std::size_t indent) {
  std::size_t width = indent;
  bool first = true;
  for (const auto& term : terms) {
    if (term.coef == 0.0) continue;
    std::string piece;
    const double mag = std::fabs(term.coef);
    if (term.coef < 0) {
      piece = "- ";
    } else if (!first) {
      piece = "+ ";
    }
    if (mag != 1.0) piece += format_number(mag) + " ";
    piece += model.variables[term.var].name;
    if (width + piece.size() + 1 > 78) {
      out << "\n  ";
      width = 2;
    } else if (!first) {
      out << " ";
      ++width;
    }
    out << piece;
    width += piece.size();
    first = false;
  }
  if (first) out << "0 " << model.variables.front().name;
}

}  // namespace

std::string export_lp(const MilpModel& model) {
  check_names(model);
  std::ostringstream out;
  write_header(out, model, "\\");
  out << "Minimize\n obj: ";
  write_lp_terms(out, model, model.objective, 6);
  out << "\nSubject To\n";
  for (const auto& row : model.constraints) {
    out << " " << row.name << ": ";
    write_lp_terms(out, model, row.terms, row.name.size() + 3);
    const char* s = row.sense == Sense::kLessEqual      ? "<="
                    : row.sense == Sense::kGreaterEqual ? ">="
                                                        : "=";
    out << " " << s << " " << format_number(row.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const auto& var : model.variables) {
    if (var.kind == VarKind::kBinary) continue;
    out << " ";
    if (std::isinf(var.lower)) {
      out << "-Inf";
    } else {
      out << format_number(var.lower);
    }
    out << " <= " << var.name;
    if (std::isfinite(var.upper)) out << " <= " << format_number(var.upper);
    out << "\n";
  }
  auto section = [&](const char* title, VarKind kind) {
    bool any = false;
    for (const auto& var : model.variables) {
      if (var.kind != kind) continue;
      if (!any) out << title << "\n";
      out << " " << var.name << "\n";
      any = true;
    }
  };
  section("Binaries", VarKind::kBinary);
  section("Generals", VarKind::kInteger);
  out << "End\n";
  return out.str();
}

}  // namespace cdcopt::milp
