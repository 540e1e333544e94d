#ifndef CDCOPT_REPORT_HPP
#define CDCOPT_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "cdcopt/ingest.hpp"
#include "cdcopt/milp.hpp"
#include "cdcopt/model.hpp"
#include "cdcopt/optimizer.hpp"
#include "cdcopt/simulator.hpp"

namespace cdcopt {

enum class Method { kOptimal, kMyopic, kOneNode, kStatic };

inline constexpr Method kAllMethods[] = {Method::kOptimal, Method::kMyopic,
                                         Method::kOneNode, Method::kStatic};

std::string to_string(Method method);
Method parse_method(const std::string& name);

struct SolverOptions {
  int n_extra = 0;
  StaticRounding static_rounding = StaticRounding::kHalfUp;
};

// The method's plan, with n_extra redundant nodes appended to `selected`.
CodePlan make_plan(Method method, const Fleet& fleet, double task_size,
                   const SolverOptions& options);

struct ReportRow {
  std::string task_id;
  double task_size = 0.0;
  Method method = Method::kOptimal;
  int k = 0;
  int n = 0;
  double expected_T = 0.0;
  std::vector<std::string> selected;
  std::vector<std::string> designated;
  sim::SimStats sim;  // samples are dropped from serialized output
};

struct Report {
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  std::vector<ReportRow> rows;
};

// Simulation seed for one task: every method on that task shares it.
std::uint64_t task_seed(std::uint64_t seed, const std::string& task_id);

// One method on one task: plan, then simulate with task_seed(seed, task.id).
ReportRow evaluate_method(Method method, const Fleet& fleet, const TaskSpec& task,
                          const SolverOptions& options, std::uint64_t seed,
                          std::size_t reps, unsigned threads = 1);

// All four methods per task, each plan simulated with the task's seed.
Report run_compare(const Fleet& fleet, const std::vector<TaskSpec>& tasks,
                   const SolverOptions& options, std::uint64_t seed,
                   std::size_t reps, unsigned threads = 1);
Report run_compare(const ingest::ExperimentConfig& config);

std::string report_csv(const Report& report);
std::string report_json(const Report& report);

// Rows emitted by solve_exact's k sweep.
std::vector<SweepRecord> run_sweep(const Fleet& fleet, const TaskSpec& task);
std::string sweep_csv(const TaskSpec& task, const std::vector<SweepRecord>& rows);
std::string sweep_json(const TaskSpec& task, const std::vector<SweepRecord>& rows);

struct ExportSummary {
  double big_m = 0.0;
  std::size_t variables = 0;
  std::size_t constraints = 0;
  std::string mps_path;
  std::optional<std::string> lp_path;
};

// Throws InvalidInput when a path cannot be written.
ExportSummary run_export_milp(const Fleet& fleet, const TaskSpec& task,
                              const std::string& mps_path,
                              const std::optional<std::string>& lp_path = std::nullopt);

// Shortest round-trip decimal rendering used by every report format.
std::string format_exact(double value);

}  // namespace cdcopt

#endif  // CDCOPT_REPORT_HPP
