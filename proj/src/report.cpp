#include "cdcopt/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "cdcopt/random.hpp"

namespace cdcopt {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw InvalidInput("failed while writing '" + path + "'");
}

}  // namespace

std::string format_exact(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string to_string(Method method) {
  switch (method) {
    case Method::kOptimal: return "optimal";
    case Method::kMyopic: return "myopic";
    case Method::kOneNode: return "onenode";
    case Method::kStatic: return "static";
  }
  return "optimal";
}

Method parse_method(const std::string& name) {
  for (auto m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  throw InvalidInput("unknown method '" + name +
                     "' (expected optimal, myopic, onenode or static)");
}

CodePlan make_plan(Method method, const Fleet& fleet, double task_size,
                   const SolverOptions& options) {
  CodePlan plan;
  switch (method) {
    case Method::kOptimal: plan = solve_exact(fleet, task_size).plan; break;
    case Method::kMyopic: plan = baseline_myopic(fleet, task_size); break;
    case Method::kOneNode: plan = baseline_onenode(fleet, task_size); break;
    case Method::kStatic:
      plan = baseline_static(fleet, task_size, options.static_rounding);
      break;
  }
  return with_redundancy(fleet, plan, task_size, options.n_extra);
}

std::uint64_t task_seed(std::uint64_t seed, const std::string& task_id) {
  return mix64(seed ^ fnv1a64(task_id));
}

ReportRow evaluate_method(Method method, const Fleet& fleet, const TaskSpec& task,
                          const SolverOptions& options, std::uint64_t seed,
                          std::size_t reps, unsigned threads) {
  ReportRow row;
  row.task_id = task.id;
  row.task_size = task.size;
  row.method = method;
  try {
    const auto plan = make_plan(method, fleet, task.size, options);
    row.k = plan.k;
    row.n = plan.n;
    row.expected_T = plan.expected_T;
    row.selected = plan.selected;
    row.designated = plan.designated;
    row.sim = sim::run_replications(fleet, plan, task.size, reps,
                                    task_seed(seed, task.id), threads);
  } catch (const InvalidInput& e) {
    throw InvalidInput("task '" + task.id + "' (" + to_string(method) + "): " + e.what());
  }
  row.sim.samples.clear();
  return row;
}

Report run_compare(const Fleet& fleet, const std::vector<TaskSpec>& tasks,
                   const SolverOptions& options, std::uint64_t seed,
                   std::size_t reps, unsigned threads) {
  Report report;
  report.seed = seed;
  report.reps = reps;
  for (const auto& task : tasks) {
    for (auto method : kAllMethods) {
      report.rows.push_back(
          evaluate_method(method, fleet, task, options, seed, reps, threads));
    }
  }
  return report;
}

Report run_compare(const ingest::ExperimentConfig& config) {
  const auto fleet = ingest::load_fleet(config);
  const auto tasks = ingest::load_tasks(config);
  SolverOptions options{config.n_extra, config.static_rounding};
  return run_compare(fleet, tasks, options, config.seed, config.reps, config.threads);
}

std::string report_csv(const Report& report) {
  std::string out =
      "task_id,task_size,method,k,n,expected_T,sim_reps,sim_mean,sim_stddev,"
      "sim_min,sim_p50,sim_p90,sim_p99,sim_max,selected,designated,node_shares\n";
  for (const auto& r : report.rows) {
    std::vector<std::string> shares;
    for (const auto& s : r.sim.shares) {
      shares.push_back(s.id + ":" + format_exact(s.comm) + ":" +
                       format_exact(s.comp_deterministic) + ":" +
                       format_exact(s.comp_stochastic));
    }
    out += r.task_id + "," + format_exact(r.task_size) + "," + to_string(r.method) + "," +
           std::to_string(r.k) + "," + std::to_string(r.n) + "," +
           format_exact(r.expected_T) + "," + std::to_string(r.sim.count) + "," +
           format_exact(r.sim.mean) + "," + format_exact(r.sim.stddev) + "," +
           format_exact(r.sim.min) + "," + format_exact(r.sim.p50) + "," +
           format_exact(r.sim.p90) + "," + format_exact(r.sim.p99) + "," +
           format_exact(r.sim.max) + "," + join(r.selected, ';') + "," +
           join(r.designated, ';') + "," + join(shares, ';') + "\n";
  }
  return out;
}

std::string report_json(const Report& report) {
  ordered_json doc;
  doc["seed"] = report.seed;
  doc["reps"] = report.reps;
  doc["rows"] = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    row["task_id"] = r.task_id;
    row["task_size"] = r.task_size;
    row["method"] = to_string(r.method);
    row["k"] = r.k;
    row["n"] = r.n;
    row["expected_T"] = r.expected_T;
    row["sim"] = {{"reps", r.sim.count}, {"mean", r.sim.mean},
                  {"stddev", r.sim.stddev}, {"min", r.sim.min},
                  {"p50", r.sim.p50},       {"p90", r.sim.p90},
                  {"p99", r.sim.p99},       {"max", r.sim.max}};
    row["selected"] = r.selected;
    row["designated"] = r.designated;
    row["node_shares"] = ordered_json::array();
    for (const auto& s : r.sim.shares) {
      row["node_shares"].push_back({{"id", s.id},
                                    {"comm", s.comm},
                                    {"comp_deterministic", s.comp_deterministic},
                                    {"comp_stochastic", s.comp_stochastic}});
    }
    doc["rows"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::vector<SweepRecord> run_sweep(const Fleet& fleet, const TaskSpec& task) {
  return solve_exact(fleet, task.size).sweep;
}

std::string sweep_csv(const TaskSpec& task, const std::vector<SweepRecord>& rows) {
  std::string out = "task_id,task_size,k,best_T,selection\n";
  for (const auto& r : rows) {
    out += task.id + "," + format_exact(task.size) + "," + std::to_string(r.k) + "," +
           format_exact(r.best_T) + "," + join(r.selection, ';') + "\n";
  }
  return out;
}

std::string sweep_json(const TaskSpec& task, const std::vector<SweepRecord>& rows) {
  ordered_json doc;
  doc["task_id"] = task.id;
  doc["task_size"] = task.size;
  doc["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    doc["rows"].push_back({{"k", r.k}, {"best_T", r.best_T}, {"selection", r.selection}});
  }
  return doc.dump(2) + "\n";
}

ExportSummary run_export_milp(const Fleet& fleet, const TaskSpec& task,
                              const std::string& mps_path,
                              const std::optional<std::string>& lp_path) {
  const auto model = milp::build_milp(fleet, task.size);
  write_text(mps_path, milp::export_mps(model));
  if (lp_path) write_text(*lp_path, milp::export_lp(model));
  return {model.big_m, model.variables.size(), model.constraints.size(), mps_path,
          lp_path};
}

}  // namespace cdcopt
