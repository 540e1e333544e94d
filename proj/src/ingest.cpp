#include "cdcopt/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cdcopt/random.hpp"

namespace cdcopt::ingest {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

struct Row {
  std::size_t line;
  std::vector<std::string> cells;
};

struct Table {
  std::size_t header_line = 0;
  std::vector<std::string> header;
  std::vector<Row> rows;
};

// Skips blank and '#' lines; the first remaining line is the header.
Table read_table(std::string_view text) {
  Table table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    const auto line = trim(raw);
    if (!line.empty() && line.front() != '#') {
      if (table.header.empty()) {
        table.header = split(line);
        table.header_line = line_no;
      } else {
        table.rows.push_back({line_no, split(line)});
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return table;
}

std::map<std::string, std::size_t> column_map(const Table& table,
                                              const std::vector<std::string>& required) {
  if (table.header.empty()) throw ParseError(0, "missing header line");
  std::map<std::string, std::size_t> cols;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (!cols.emplace(table.header[i], i).second) {
      throw ParseError(table.header_line, "duplicate column '" + table.header[i] + "'");
    }
  }
  for (const auto& name : required) {
    if (!cols.count(name)) {
      throw ParseError(table.header_line, "missing column '" + name + "'");
    }
  }
  return cols;
}

const std::string& cell(const Row& row, std::size_t col, const std::string& name) {
  if (col >= row.cells.size()) {
    throw ParseError(row.line, "missing value for column '" + name + "'");
  }
  return row.cells[col];
}

double parse_number(const Row& row, const std::string& text, const std::string& name) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(row.line, "column '" + name + "': '" + text + "' is not a number");
  }
  return value;
}

std::string render(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
  if (!std::filesystem::exists(p)) {
    throw ParseError(0, "referenced file '" + p.string() + "' does not exist");
  }
  return p.string();
}

}  // namespace

namespace {

std::string describe(std::size_t line, const std::string& message,
                     const std::string& source) {
  std::string out = source;
  if (line > 0) out += (out.empty() ? "line " : ":") + std::to_string(line);
  if (!out.empty()) out += ": ";
  return out + message;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message,
                       const std::string& source)
    : InvalidInput(describe(line, message, source)),
      line_(line),
      message_(message),
      source_(source) {}

std::vector<TaskSpec> parse_task_csv(std::string_view text, bool sort_ascending) {
  const auto table = read_table(text);
  if (table.header.empty()) return {};
  const auto cols = column_map(table, {"task_id", "size"});
  std::vector<TaskSpec> tasks;
  std::set<std::string> ids;
  for (const auto& row : table.rows) {
    TaskSpec task;
    task.id = cell(row, cols.at("task_id"), "task_id");
    if (task.id.empty()) throw ParseError(row.line, "empty task_id");
    task.size = parse_number(row, cell(row, cols.at("size"), "size"), "size");
    if (!(task.size > 0.0)) {
      throw ParseError(row.line, "task '" + task.id + "': size must be positive");
    }
    if (!ids.insert(task.id).second) {
      throw ParseError(row.line, "duplicate task_id '" + task.id + "'");
    }
    tasks.push_back(std::move(task));
  }
  if (sort_ascending) {
    std::stable_sort(tasks.begin(), tasks.end(),
                     [](const TaskSpec& a, const TaskSpec& b) { return a.size < b.size; });
  }
  return tasks;
}

std::string write_task_csv(const std::vector<TaskSpec>& tasks) {
  std::string out = "task_id,size\n";
  for (const auto& t : tasks) out += t.id + "," + render(t.size) + "\n";
  return out;
}

Fleet parse_fleet_csv(std::string_view text, const FleetDefaults& defaults) {
  const auto table = read_table(text);
  const auto cols = column_map(table, {"node_id", "tau_s", "eta_ops_per_s"});
  const auto p_col = cols.find("p");
  const auto alpha_col = cols.find("alpha");
  std::vector<NodeProfile> nodes;
  std::set<std::string> ids;
  for (const auto& row : table.rows) {
    NodeProfile node;
    node.id = cell(row, cols.at("node_id"), "node_id");
    if (node.id.empty()) throw ParseError(row.line, "empty node_id");
    node.tau = parse_number(row, cell(row, cols.at("tau_s"), "tau_s"), "tau_s");
    node.eta = parse_number(row, cell(row, cols.at("eta_ops_per_s"), "eta_ops_per_s"),
                            "eta_ops_per_s");
    node.p = defaults.p;
    node.alpha = defaults.alpha;
    if (p_col != cols.end() && p_col->second < row.cells.size() &&
        !row.cells[p_col->second].empty()) {
      node.p = parse_number(row, row.cells[p_col->second], "p");
    }
    if (alpha_col != cols.end() && alpha_col->second < row.cells.size() &&
        !row.cells[alpha_col->second].empty()) {
      node.alpha = parse_number(row, row.cells[alpha_col->second], "alpha");
    }
    try {
      node.validate();
    } catch (const InvalidInput& e) {
      throw ParseError(row.line, e.what());
    }
    if (!ids.insert(node.id).second) {
      throw ParseError(row.line, "duplicate node_id '" + node.id + "'");
    }
    nodes.push_back(std::move(node));
  }
  if (nodes.empty()) throw ParseError(0, "fleet file contains no nodes");
  return Fleet(std::move(nodes));
}

std::string write_fleet_csv(const Fleet& fleet) {
  std::string out = "node_id,tau_s,eta_ops_per_s,p,alpha\n";
  for (const auto& n : fleet) {
    out += n.id + "," + render(n.tau) + "," + render(n.eta) + "," + render(n.p) +
           "," + render(n.alpha) + "\n";
  }
  return out;
}

Fleet gen_synthetic_fleet(const SyntheticFleetSpec& spec) {
  if (spec.nodes < 1) throw InvalidInput("synthetic fleet needs at least one node");
  auto check = [](const Range& r, const char* what) {
    if (!(r.lo > 0.0 && std::isfinite(r.hi))) {
      throw InvalidInput(std::string(what) + " range must be positive");
    }
    if (r.lo > r.hi) {
      throw InvalidInput(std::string(what) + " range is inverted (lo > hi)");
    }
  };
  check(spec.tau, "tau");
  check(spec.eta, "eta");
  const RngStream rng(spec.seed, 0);
  auto log_uniform = [&](const Range& r, std::uint64_t key, std::uint64_t counter) {
    if (r.lo == r.hi) return r.lo;
    const double u = rng.uniform(key, counter);
    return r.lo * std::pow(r.hi / r.lo, u);
  };
  const int width = std::max<int>(2, static_cast<int>(std::to_string(spec.nodes).size()));
  std::vector<NodeProfile> nodes;
  nodes.reserve(spec.nodes);
  for (std::size_t i = 0; i < spec.nodes; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "node%0*zu", width, i + 1);
    NodeProfile node;
    node.id = id;
    node.tau = log_uniform(spec.tau, i, 0);
    node.eta = log_uniform(spec.eta, i, 1);
    node.p = spec.p;
    node.alpha = spec.alpha;
    nodes.push_back(std::move(node));
  }
  return Fleet(std::move(nodes));
}

ExperimentConfig parse_config(std::string_view json_text, const std::string& base_dir) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line_of_offset(json_text, e.byte), std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError(0, "config: top level must be an object");

  auto fail = [](const std::string& key, const std::string& why) -> void {
    throw ParseError(0, "config: '" + key + "' " + why);
  };
  auto allow = [&](const json& obj, const std::string& where,
                   std::initializer_list<const char*> keys) {
    for (const auto& [key, _] : obj.items()) {
      if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return key == k; }) ==
          keys.end()) {
        fail(where + key, "is not a recognized key");
      }
    }
  };
  auto number = [&](const json& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(where + key, "must be a number");
    return v.get<double>();
  };
  auto count = [&](const json& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      fail(where + key, "must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  };
  auto range = [&](const json& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      fail(where + key, "must be a two-element numeric array [lo, hi]");
    }
    return Range{v[0].get<double>(), v[1].get<double>()};
  };

  allow(doc, "", {"fleet", "tasks", "default_p", "default_alpha", "seed", "reps",
                  "solver", "sort_tasks", "threads"});
  ExperimentConfig cfg;
  if (doc.contains("default_p")) cfg.defaults.p = number(doc, "default_p", "");
  if (doc.contains("default_alpha")) cfg.defaults.alpha = number(doc, "default_alpha", "");
  if (!(cfg.defaults.p > 0.0 && cfg.defaults.p <= 1.0)) fail("default_p", "must lie in (0, 1]");
  if (!(cfg.defaults.alpha > 0.0)) fail("default_alpha", "must be positive");
  if (doc.contains("seed")) cfg.seed = count(doc, "seed", "");
  if (doc.contains("reps")) {
    cfg.reps = count(doc, "reps", "");
    if (cfg.reps == 0) fail("reps", "must be at least 1");
  }
  if (doc.contains("threads")) {
    cfg.threads = static_cast<unsigned>(std::max<std::uint64_t>(1, count(doc, "threads", "")));
  }
  if (doc.contains("sort_tasks")) {
    if (!doc["sort_tasks"].is_boolean()) fail("sort_tasks", "must be a boolean");
    cfg.sort_tasks = doc["sort_tasks"].get<bool>();
  }
  if (doc.contains("solver")) {
    const auto& s = doc["solver"];
    if (!s.is_object()) fail("solver", "must be an object");
    allow(s, "solver.", {"n_extra", "static_rounding"});
    if (s.contains("n_extra")) cfg.n_extra = static_cast<int>(count(s, "n_extra", "solver."));
    if (s.contains("static_rounding")) {
      if (!s["static_rounding"].is_string()) fail("solver.static_rounding", "must be a string");
      cfg.static_rounding = parse_static_rounding(s["static_rounding"].get<std::string>());
    }
  }
  if (!doc.contains("fleet")) fail("fleet", "is required");
  {
    const auto& f = doc["fleet"];
    if (!f.is_object()) fail("fleet", "must be an object");
    allow(f, "fleet.", {"file", "synthetic"});
    if (f.contains("file") == f.contains("synthetic")) {
      fail("fleet", "needs exactly one of 'file' or 'synthetic'");
    }
    if (f.contains("file")) {
      if (!f["file"].is_string()) fail("fleet.file", "must be a string");
      cfg.fleet_file = resolve(base_dir, f["file"].get<std::string>());
    } else {
      const auto& s = f["synthetic"];
      if (!s.is_object()) fail("fleet.synthetic", "must be an object");
      allow(s, "fleet.synthetic.", {"seed", "nodes", "tau_s", "eta_ops_per_s", "p", "alpha"});
      SyntheticFleetSpec spec;
      spec.p = cfg.defaults.p;
      spec.alpha = cfg.defaults.alpha;
      const std::string w = "fleet.synthetic.";
      if (s.contains("seed")) spec.seed = count(s, "seed", w);
      if (s.contains("nodes")) spec.nodes = count(s, "nodes", w);
      if (s.contains("tau_s")) spec.tau = range(s, "tau_s", w);
      if (s.contains("eta_ops_per_s")) spec.eta = range(s, "eta_ops_per_s", w);
      if (s.contains("p")) spec.p = number(s, "p", w);
      if (s.contains("alpha")) spec.alpha = number(s, "alpha", w);
      cfg.synthetic_fleet = spec;
    }
  }
  if (doc.contains("tasks")) {
    const auto& t = doc["tasks"];
    if (!t.is_object()) fail("tasks", "must be an object");
    allow(t, "tasks.", {"file", "inline"});
    if (t.contains("file")) {
      if (!t["file"].is_string()) fail("tasks.file", "must be a string");
      cfg.tasks_file = resolve(base_dir, t["file"].get<std::string>());
    }
    if (t.contains("inline")) {
      if (!t["inline"].is_array()) fail("tasks.inline", "must be an array");
      for (const auto& item : t["inline"]) {
        if (!item.is_object() || !item.contains("id") || !item.contains("size") ||
            !item["id"].is_string() || !item["size"].is_number()) {
          fail("tasks.inline", "entries must be {\"id\": string, \"size\": number}");
        }
        TaskSpec task{item["id"].get<std::string>(), item["size"].get<double>()};
        if (!(task.size > 0.0)) fail("tasks.inline", "task '" + task.id + "' size must be positive");
        cfg.tasks.push_back(std::move(task));
      }
    }
  }
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig load_config(const std::string& path) {
  const auto text = read_file(path);
  const auto dir = std::filesystem::path(path).parent_path().string();
  try {
    return parse_config(text, dir.empty() ? "." : dir);
  } catch (const ParseError& e) {
    throw e.in_source(path);
  }
}

Fleet load_fleet(const ExperimentConfig& config) {
  if (config.fleet_file) {
    try {
      return parse_fleet_csv(read_file(*config.fleet_file), config.defaults);
    } catch (const ParseError& e) {
      throw e.in_source(*config.fleet_file);
    }
  }
  if (config.synthetic_fleet) return gen_synthetic_fleet(*config.synthetic_fleet);
  throw InvalidInput("config names no fleet source");
}

std::vector<TaskSpec> load_tasks(const ExperimentConfig& config) {
  std::vector<TaskSpec> tasks;
  if (config.tasks_file) {
    try {
      tasks = parse_task_csv(read_file(*config.tasks_file));
    } catch (const ParseError& e) {
      throw e.in_source(*config.tasks_file);
    }
  }
  std::set<std::string> ids;
  for (const auto& t : tasks) ids.insert(t.id);
  for (const auto& t : config.tasks) {
    if (!ids.insert(t.id).second) throw InvalidInput("duplicate task id '" + t.id + "'");
    tasks.push_back(t);
  }
  if (config.sort_tasks) {
    std::stable_sort(tasks.begin(), tasks.end(),
                     [](const TaskSpec& a, const TaskSpec& b) { return a.size < b.size; });
  }
  return tasks;
}

}  // namespace cdcopt::ingest
