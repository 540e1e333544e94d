#ifndef CDCOPT_INGEST_HPP
#define CDCOPT_INGEST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdcopt/model.hpp"
#include "cdcopt/optimizer.hpp"

namespace cdcopt::ingest {

// Input error tied to a line of a CSV or config document. line == 0 when
// the error is not attributable to a single line.
class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, const std::string& message,
             const std::string& source = "");
  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }
  const std::string& source() const { return source_; }

  ParseError in_source(const std::string& source) const {
    return ParseError(line_, message_, source);
  }

 private:
  std::size_t line_;
  std::string message_;
  std::string source_;
};

// Schema: task_id,size
std::vector<TaskSpec> parse_task_csv(std::string_view text,
                                     bool sort_ascending = false);
std::string write_task_csv(const std::vector<TaskSpec>& tasks);

struct FleetDefaults {
  double p = 0.9;
  double alpha = 2.0;
};

// Schema: node_id,tau_s,eta_ops_per_s[,p][,alpha]. Empty p/alpha cells
// fall back to the defaults. Unknown columns are ignored.
Fleet parse_fleet_csv(std::string_view text, const FleetDefaults& defaults = {});
std::string write_fleet_csv(const Fleet& fleet);

struct Range {
  double lo = 1.0;
  double hi = 1.0;
};

struct SyntheticFleetSpec {
  std::uint64_t seed = 1;
  std::size_t nodes = 50;
  Range tau{0.01, 1.0};
  Range eta{10.0, 1000.0};
  double p = 0.9;
  double alpha = 2.0;
};

// tau and eta drawn log-uniformly; ids node01, node02, ...
Fleet gen_synthetic_fleet(const SyntheticFleetSpec& spec);

struct ExperimentConfig {
  std::optional<std::string> fleet_file;
  std::optional<SyntheticFleetSpec> synthetic_fleet;
  std::optional<std::string> tasks_file;
  std::vector<TaskSpec> tasks;  // inline tasks, appended after tasks_file
  FleetDefaults defaults;
  std::uint64_t seed = 1;
  std::size_t reps = 1000;
  int n_extra = 0;
  StaticRounding static_rounding = StaticRounding::kHalfUp;
  bool sort_tasks = false;
  unsigned threads = 1;
};

// JSON document; relative paths resolve against `base_dir`. Referenced
// files must exist.
ExperimentConfig parse_config(std::string_view json_text,
                              const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

Fleet load_fleet(const ExperimentConfig& config);
std::vector<TaskSpec> load_tasks(const ExperimentConfig& config);

std::string read_file(const std::string& path);

}  // namespace cdcopt::ingest

#endif  // CDCOPT_INGEST_HPP
