#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rvvport/executors.hpp"
#include "rvvport/kv_file.hpp"
#include "rvvport/vector_type.hpp"

namespace rvvport {

/// Settings for a translation run. Every field has a key usable both as a
/// command-line flag (`--key`) and in the config file (`key = "value"`).
struct RunConfig {
  std::filesystem::path corpus_dir = "corpus";
  std::vector<std::string> cases;  // empty: every case
  std::string model;
  std::string endpoint;
  std::filesystem::path replay;
  double temperature = 0.2;
  int max_tokens = 8192;
  int translate_max = 10;
  int optimize_max = 10;
  ToolchainConfig toolchain;
  FootprintMode pressure_mode = FootprintMode::kPaperLiteral;
  int parallel = 1;
  std::filesystem::path out_dir = "rvvport-out";
  bool include_failed = false;
  bool no_exec = false;
  bool keep_scratch = false;
  std::size_t feedback_bytes = 8192;

  /// Throws ConfigError: exactly one of endpoint/replay, budgets >= 1, ...
  void validate() const;
};

/// Keys accepted by apply_setting, in documentation order.
const std::vector<std::string>& config_keys();

/// Sets one field from its textual value; throws ConfigError on an unknown
/// key or a malformed value.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// The value of a field rendered as text (inverse of apply_setting).
std::string get_setting(const RunConfig& config, const std::string& key);

/// Built-in defaults, overridden by the config file, overridden by flags.
RunConfig resolve_config(const KeyValues& file_values, const KeyValues& flag_values);

}  // namespace rvvport
