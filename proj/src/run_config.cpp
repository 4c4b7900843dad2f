#include "rvvport/run_config.hpp"

#include <charconv>
#include <sstream>

#include "rvvport/error.hpp"

namespace rvvport {
namespace {

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected a number, got '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& i : items) {
    if (!out.empty()) out += ",";
    out += i;
  }
  return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "corpus",          "cases",       "model",        "endpoint",    "replay",         "temperature",
      "max-tokens",      "translate-max", "optimize-max", "cc",        "flags",          "compile-template",
      "runner",          "runner-template", "vlens",    "compile-timeout", "run-timeout", "perf-runs",
      "pressure-mode",   "parallel",    "out",          "include-failed", "no-exec",     "keep-scratch",
      "feedback-bytes"};
  return keys;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& v) {
  auto& t = c.toolchain;
  if (key == "corpus") {
    c.corpus_dir = v;
  } else if (key == "cases") {
    c.cases = split_list(v);
  } else if (key == "model") {
    c.model = v;
  } else if (key == "endpoint") {
    c.endpoint = v;
  } else if (key == "replay") {
    c.replay = v;
  } else if (key == "temperature") {
    c.temperature = to_double(key, v);
  } else if (key == "max-tokens") {
    c.max_tokens = to_int(key, v);
  } else if (key == "translate-max") {
    c.translate_max = to_int(key, v);
  } else if (key == "optimize-max") {
    c.optimize_max = to_int(key, v);
  } else if (key == "cc") {
    t.cc = v;
  } else if (key == "flags") {
    t.flags = v;
  } else if (key == "compile-template") {
    t.compile_cmd_template = v;
  } else if (key == "runner") {
    t.runner = v;
  } else if (key == "runner-template") {
    t.runner_cmd_template = v;
  } else if (key == "vlens") {
    t.vlens.clear();
    for (const auto& item : split_list(v)) t.vlens.push_back(to_int(key, item));
  } else if (key == "compile-timeout") {
    t.compile_timeout_s = to_int(key, v);
  } else if (key == "run-timeout") {
    t.run_timeout_s = to_int(key, v);
  } else if (key == "perf-runs") {
    t.perf_runs = to_int(key, v);
  } else if (key == "pressure-mode") {
    auto m = parse_footprint_mode(v);
    if (!m) throw ConfigError("pressure-mode: expected paper_literal or physical, got '" + v + "'");
    c.pressure_mode = *m;
  } else if (key == "parallel") {
    c.parallel = to_int(key, v);
  } else if (key == "out") {
    c.out_dir = v;
  } else if (key == "include-failed") {
    c.include_failed = to_bool(key, v);
  } else if (key == "no-exec") {
    c.no_exec = to_bool(key, v);
  } else if (key == "keep-scratch") {
    c.keep_scratch = to_bool(key, v);
  } else if (key == "feedback-bytes") {
    const int n = to_int(key, v);
    if (n < 64) throw ConfigError("feedback-bytes must be at least 64");
    c.feedback_bytes = static_cast<std::size_t>(n);
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

std::string get_setting(const RunConfig& c, const std::string& key) {
  const auto& t = c.toolchain;
  if (key == "corpus") return c.corpus_dir.string();
  if (key == "cases") return join_list(c.cases);
  if (key == "model") return c.model;
  if (key == "endpoint") return c.endpoint;
  if (key == "replay") return c.replay.string();
  if (key == "temperature") {
    std::ostringstream os;
    os << c.temperature;
    return os.str();
  }
  if (key == "max-tokens") return std::to_string(c.max_tokens);
  if (key == "translate-max") return std::to_string(c.translate_max);
  if (key == "optimize-max") return std::to_string(c.optimize_max);
  if (key == "cc") return t.cc;
  if (key == "flags") return t.flags;
  if (key == "compile-template") return t.compile_cmd_template;
  if (key == "runner") return t.runner;
  if (key == "runner-template") return t.runner_cmd_template;
  if (key == "vlens") {
    std::vector<std::string> items;
    for (int v : t.vlens) items.push_back(std::to_string(v));
    return join_list(items);
  }
  if (key == "compile-timeout") return std::to_string(t.compile_timeout_s);
  if (key == "run-timeout") return std::to_string(t.run_timeout_s);
  if (key == "perf-runs") return std::to_string(t.perf_runs);
  if (key == "pressure-mode") return std::string(to_string(c.pressure_mode));
  if (key == "parallel") return std::to_string(c.parallel);
  if (key == "out") return c.out_dir.string();
  if (key == "include-failed") return bool_text(c.include_failed);
  if (key == "no-exec") return bool_text(c.no_exec);
  if (key == "keep-scratch") return bool_text(c.keep_scratch);
  if (key == "feedback-bytes") return std::to_string(c.feedback_bytes);
  throw ConfigError("unknown setting '" + key + "'");
}

RunConfig resolve_config(const KeyValues& file_values, const KeyValues& flag_values) {
  RunConfig c;
  for (const auto& [k, v] : file_values) apply_setting(c, k, v);
  for (const auto& [k, v] : flag_values) apply_setting(c, k, v);
  return c;
}

void RunConfig::validate() const {
  if (endpoint.empty() == replay.empty()) {
    throw ConfigError("exactly one of --endpoint and --replay must be set");
  }
  if (translate_max < 1 || optimize_max < 1) throw ConfigError("budgets must be at least 1");
  if (parallel < 1) throw ConfigError("parallel must be at least 1");
  if (temperature < 0 || temperature > 2) throw ConfigError("temperature must lie in [0, 2]");
  if (max_tokens < 1) throw ConfigError("max-tokens must be positive");
  if (!endpoint.empty() && model.empty()) throw ConfigError("a model name is required with --endpoint");
  toolchain.validate();
}

}  // namespace rvvport
