// cdcopt command-line driver.
//
// Exit codes: 0 success, 2 input error, 1 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdcopt/ingest.hpp"
#include "cdcopt/milp.hpp"
#include "cdcopt/optimizer.hpp"
#include "cdcopt/report.hpp"

namespace {

using namespace cdcopt;

constexpr int kExitInput = 2;
constexpr int kExitInternal = 1;

struct Options {
  std::string config_path;
  std::string fleet_path;
  std::string tasks_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  std::string format = "csv";
  std::optional<int> n_extra;
  bool sort_tasks = false;
  std::optional<unsigned> threads;
  std::optional<double> p;
  std::optional<double> alpha;
  std::optional<std::string> static_rounding;
  std::string out_path;

  // Per-subcommand.
  std::string method = "optimal";
  std::string task_id;
  std::optional<double> size;
  std::string mps_path;
  std::string lp_path;
  std::size_t nodes = 50;
  std::vector<double> tau_range{0.01, 1.0};
  std::vector<double> eta_range{10.0, 1000.0};
};

// Config file first, then command-line overrides.
ingest::ExperimentConfig resolve_config(const Options& o, bool need_fleet) {
  ingest::ExperimentConfig cfg;
  if (!o.config_path.empty()) cfg = ingest::load_config(o.config_path);
  if (o.p) cfg.defaults.p = *o.p;
  if (o.alpha) cfg.defaults.alpha = *o.alpha;
  if (!o.fleet_path.empty()) {
    cfg.fleet_file = o.fleet_path;
    cfg.synthetic_fleet.reset();
  }
  if (!o.tasks_path.empty()) {
    cfg.tasks_file = o.tasks_path;
    cfg.tasks.clear();
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.reps) {
    if (*o.reps == 0) throw InvalidInput("--reps must be at least 1");
    cfg.reps = *o.reps;
  }
  if (o.n_extra) {
    if (*o.n_extra < 0) throw InvalidInput("--n-extra must be non-negative");
    cfg.n_extra = *o.n_extra;
  }
  if (o.sort_tasks) cfg.sort_tasks = true;
  if (o.threads) cfg.threads = std::max(1u, *o.threads);
  if (o.static_rounding) cfg.static_rounding = parse_static_rounding(*o.static_rounding);
  if (need_fleet && !cfg.fleet_file && !cfg.synthetic_fleet) {
    throw InvalidInput("no fleet given (use --fleet or --config)");
  }
  return cfg;
}

std::vector<TaskSpec> resolve_tasks(const Options& o, const ingest::ExperimentConfig& cfg) {
  if (o.size) {
    if (!(*o.size > 0.0)) throw InvalidInput("--size must be positive");
    return {TaskSpec{o.task_id.empty() ? "task" : o.task_id, *o.size}};
  }
  auto tasks = ingest::load_tasks(cfg);
  if (!o.task_id.empty()) {
    for (const auto& t : tasks) {
      if (t.id == o.task_id) return {t};
    }
    throw InvalidInput("task '" + o.task_id + "' not found");
  }
  if (tasks.empty()) throw InvalidInput("no tasks given (use --tasks, --config or --size)");
  return tasks;
}

const TaskSpec& single_task(const std::vector<TaskSpec>& tasks, const char* cmd) {
  if (tasks.size() != 1) {
    throw InvalidInput(std::string(cmd) + " needs exactly one task (use --task or --size)");
  }
  return tasks.front();
}

void emit(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write '" + o.out_path + "'");
  out << text;
}

SolverOptions solver_options(const ingest::ExperimentConfig& cfg) {
  return {cfg.n_extra, cfg.static_rounding};
}

std::string join(const std::vector<std::string>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? std::string(1, sep) : "") + v[i];
  return out;
}

int cmd_plan(const Options& o) {
  const auto cfg = resolve_config(o, true);
  const auto fleet = ingest::load_fleet(cfg);
  const auto tasks = resolve_tasks(o, cfg);
  std::vector<Method> methods;
  if (o.method == "all") {
    methods.assign(std::begin(kAllMethods), std::end(kAllMethods));
  } else {
    methods.push_back(parse_method(o.method));
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::string csv = "task_id,task_size,method,k,n,expected_T,selected,designated\n";
  for (const auto& task : tasks) {
    for (auto m : methods) {
      const auto plan = make_plan(m, fleet, task.size, solver_options(cfg));
      csv += task.id + "," + format_exact(task.size) + "," + to_string(m) + "," +
             std::to_string(plan.k) + "," + std::to_string(plan.n) + "," +
             format_exact(plan.expected_T) + "," + join(plan.selected, ';') + "," +
             join(plan.designated, ';') + "\n";
      rows.push_back({{"task_id", task.id},
                      {"task_size", task.size},
                      {"method", to_string(m)},
                      {"k", plan.k},
                      {"n", plan.n},
                      {"expected_T", plan.expected_T},
                      {"selected", plan.selected},
                      {"designated", plan.designated}});
    }
  }
  emit(o, o.format == "json" ? nlohmann::ordered_json{{"rows", rows}}.dump(2) + "\n" : csv);
  return 0;
}

int cmd_sweep(const Options& o) {
  const auto cfg = resolve_config(o, true);
  const auto fleet = ingest::load_fleet(cfg);
  const auto tasks = resolve_tasks(o, cfg);
  const auto& task = single_task(tasks, "sweep");
  const auto rows = run_sweep(fleet, task);
  emit(o, o.format == "json" ? sweep_json(task, rows) : sweep_csv(task, rows));
  return 0;
}

int cmd_simulate(const Options& o) {
  const auto cfg = resolve_config(o, true);
  const auto fleet = ingest::load_fleet(cfg);
  const auto tasks = resolve_tasks(o, cfg);
  const auto method = parse_method(o.method);
  Report report;
  report.seed = cfg.seed;
  report.reps = cfg.reps;
  for (const auto& task : tasks) {
    report.rows.push_back(evaluate_method(method, fleet, task, solver_options(cfg),
                                          cfg.seed, cfg.reps, cfg.threads));
  }
  emit(o, o.format == "json" ? report_json(report) : report_csv(report));
  return 0;
}

int cmd_compare(const Options& o) {
  const auto cfg = resolve_config(o, true);
  const auto fleet = ingest::load_fleet(cfg);
  const auto tasks = resolve_tasks(o, cfg);
  const auto report =
      run_compare(fleet, tasks, solver_options(cfg), cfg.seed, cfg.reps, cfg.threads);
  emit(o, o.format == "json" ? report_json(report) : report_csv(report));
  return 0;
}

int cmd_export_milp(const Options& o) {
  const auto cfg = resolve_config(o, true);
  const auto fleet = ingest::load_fleet(cfg);
  const auto tasks = resolve_tasks(o, cfg);
  const auto& task = single_task(tasks, "export-milp");
  std::optional<std::string> lp;
  if (!o.lp_path.empty()) lp = o.lp_path;
  const auto summary = run_export_milp(fleet, task, o.mps_path, lp);
  std::cout << "task " << task.id << " size " << format_exact(task.size) << "\n"
            << "big_m " << milp::format_number(summary.big_m) << "\n"
            << "variables " << summary.variables << "\n"
            << "constraints " << summary.constraints << "\n"
            << "mps " << summary.mps_path << "\n";
  if (summary.lp_path) std::cout << "lp " << *summary.lp_path << "\n";
  return 0;
}

int cmd_gen_fleet(const Options& o) {
  ingest::SyntheticFleetSpec spec;
  spec.seed = o.seed.value_or(1);
  spec.nodes = o.nodes;
  spec.tau = {o.tau_range.at(0), o.tau_range.at(1)};
  spec.eta = {o.eta_range.at(0), o.eta_range.at(1)};
  spec.p = o.p.value_or(0.9);
  spec.alpha = o.alpha.value_or(2.0);
  emit(o, ingest::write_fleet_csv(ingest::gen_synthetic_fleet(spec)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint MDS code and node selection planning for edge fleets"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--config", o.config_path, "Experiment config (JSON)");
  app.add_option("--fleet", o.fleet_path, "Fleet CSV: node_id,tau_s,eta_ops_per_s[,p][,alpha]");
  app.add_option("--tasks", o.tasks_path, "Task CSV: task_id,size");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--reps", o.reps, "Monte Carlo replications");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--n-extra", o.n_extra, "Redundant nodes added to each plan");
  app.add_flag("--sort-tasks", o.sort_tasks, "Sort tasks by ascending size");
  app.add_option("--threads", o.threads, "Simulation worker threads");
  app.add_option("--p", o.p, "Default transmission success probability");
  app.add_option("--alpha", o.alpha, "Default straggling coefficient");
  app.add_option("--static-rounding", o.static_rounding, "half-up, floor or ceil");
  app.add_option("--out", o.out_path, "Write output to a file instead of stdout");

  auto add_task_opts = [&o](CLI::App* sub) {
    sub->add_option("--task", o.task_id, "Task id to select (or id for --size)");
    sub->add_option("--size", o.size, "Ad-hoc task size D");
  };

  auto* plan = app.add_subcommand("plan", "Plan code and node selection per task");
  add_task_opts(plan);
  plan->add_option("--method", o.method, "optimal, myopic, onenode, static or all");

  auto* sweep = app.add_subcommand("sweep", "Best objective for every k");
  add_task_opts(sweep);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo evaluation of one method");
  add_task_opts(simulate);
  simulate->add_option("--method", o.method, "optimal, myopic, onenode or static");

  auto* compare = app.add_subcommand("compare", "All methods on all tasks, simulated");
  add_task_opts(compare);

  auto* export_milp = app.add_subcommand("export-milp", "Write the linearized model");
  add_task_opts(export_milp);
  export_milp->add_option("--mps", o.mps_path, "MPS output path")->required();
  export_milp->add_option("--lp", o.lp_path, "Optional LP output path");

  auto* gen_fleet = app.add_subcommand("gen-fleet", "Seeded synthetic fleet CSV");
  gen_fleet->add_option("--nodes", o.nodes, "Number of nodes");
  gen_fleet->add_option("--tau-range", o.tau_range, "tau_s lo hi")->expected(2);
  gen_fleet->add_option("--eta-range", o.eta_range, "eta_ops_per_s lo hi")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*plan) return cmd_plan(o);
    if (*sweep) return cmd_sweep(o);
    if (*simulate) return cmd_simulate(o);
    if (*compare) return cmd_compare(o);
    if (*export_milp) return cmd_export_milp(o);
    if (*gen_fleet) return cmd_gen_fleet(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
