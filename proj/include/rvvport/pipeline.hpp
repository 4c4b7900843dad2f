#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <stop_token>
#include <string>
#include <vector>

#include "rvvport/metrics.hpp"
#include "rvvport/orchestrator.hpp"
#include "rvvport/run_config.hpp"

namespace rvvport {

struct RunSummary {
  std::vector<TaskOutcome> outcomes;  // sorted by case id
  MetricsReport metrics;
  std::vector<std::string> warnings;
};

/// Replay or remote client as configured.
std::unique_ptr<LlmClient> make_llm_client(const RunConfig& config);

/// Mock executor under no_exec, the toolchain otherwise (probed).
std::unique_ptr<Executor> make_executor(const RunConfig& config);

/// Loads and validates the selected cases. Throws ConfigError for an unknown
/// case id (listing the valid ones) or a selected case that fails to load.
std::vector<ValidatedCase> select_cases(const RunConfig& config, std::vector<std::string>& warnings);

using ProgressSink = std::function<void(const std::string&)>;

/// Runs every selected case with up to config.parallel tasks at once and
/// writes <out>/outcomes/<case>.json, <out>/metrics.json, <out>/report.txt
/// and <out>/run.json. Attempt logs live in <out>/work/<case>/log/.
RunSummary run_pipeline(const RunConfig& config, LlmClient& llm, Executor& exec, std::stop_token stop = {},
                        const ProgressSink& progress = {});

/// Metrics label for a config: the model name, or "replay".
std::string run_label(const RunConfig& config);

struct LoadedOutcomes {
  std::vector<TaskOutcome> outcomes;
  std::vector<std::string> warnings;  // one per corrupt file
};

/// Reads outcome files from `dir` (a run directory or its outcomes/
/// subdirectory). Corrupt files are skipped with a warning; throws Error
/// when no outcome can be read.
LoadedOutcomes load_outcomes(const std::filesystem::path& dir);

std::string write_text_atomically(const std::filesystem::path& file, const std::string& text);

}  // namespace rvvport
