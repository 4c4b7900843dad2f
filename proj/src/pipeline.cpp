#include "rvvport/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include "rvvport/error.hpp"

namespace rvvport {
namespace fs = std::filesystem;

std::string run_label(const RunConfig& config) {
  if (!config.model.empty()) return config.model;
  return config.replay.empty() ? "run" : "replay";
}

std::unique_ptr<LlmClient> make_llm_client(const RunConfig& config) {
  if (!config.replay.empty()) return std::make_unique<ReplayClient>(ReplayClient::from_file(config.replay));
  RemoteClient::Options opt;
  opt.endpoint = config.endpoint;
  opt.model = config.model;
  return std::make_unique<RemoteClient>(std::move(opt));
}

std::unique_ptr<Executor> make_executor(const RunConfig& config) {
  if (config.no_exec) return std::make_unique<MockExecutor>(config.toolchain);
  auto exec = std::make_unique<ToolchainExecutor>(config.toolchain);
  exec->probe();
  return exec;
}

std::vector<ValidatedCase> select_cases(const RunConfig& config, std::vector<std::string>& warnings) {
  CorpusListing listing;
  try {
    listing = load_corpus(config.corpus_dir);
  } catch (const CorpusError& e) {
    throw ConfigError(e.what());
  }
  for (const auto& err : listing.errors) {
    warnings.push_back("skipping " + err.case_dir.filename().string() + ": " + err.message);
  }
  std::vector<const CaseManifest*> chosen;
  if (config.cases.empty()) {
    for (const auto& m : listing.cases) chosen.push_back(&m);
  } else {
    for (const auto& id : config.cases) {
      auto it = std::find_if(listing.cases.begin(), listing.cases.end(),
                             [&](const CaseManifest& m) { return m.case_id == id; });
      if (it == listing.cases.end()) {
        std::string valid;
        for (const auto& m : listing.cases) valid += (valid.empty() ? "" : ", ") + m.case_id;
        throw ConfigError("unknown case id '" + id + "'; valid ids: " + valid);
      }
      if (std::find(chosen.begin(), chosen.end(), &*it) == chosen.end()) chosen.push_back(&*it);
    }
    std::sort(chosen.begin(), chosen.end(),
              [](const CaseManifest* a, const CaseManifest* b) { return a->case_id < b->case_id; });
  }
  if (chosen.empty()) throw ConfigError("no loadable cases in " + config.corpus_dir.string());
  std::vector<ValidatedCase> cases;
  for (const auto* m : chosen) {
    try {
      cases.push_back(validate_case(*m));
    } catch (const CorpusError& e) {
      throw ConfigError(e.what());
    }
    for (const auto& w : cases.back().warnings) warnings.push_back(w);
  }
  return cases;
}

std::string write_text_atomically(const fs::path& file, const std::string& text) {
  fs::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error("cannot write " + tmp);
  }
  fs::rename(tmp, file);
  return file.string();
}

namespace {

void drop_scratch(const fs::path& case_dir) {
  std::error_code ec;
  if (!fs::is_directory(case_dir, ec)) return;
  for (const auto& entry : fs::directory_iterator(case_dir, ec)) {
    if (entry.path().filename() != "log") fs::remove_all(entry.path(), ec);
  }
}

}  // namespace

RunSummary run_pipeline(const RunConfig& config, LlmClient& llm, Executor& exec, std::stop_token stop,
                        const ProgressSink& progress) {
  config.validate();
  RunSummary summary;
  const auto cases = select_cases(config, summary.warnings);
  const fs::path work = config.out_dir / "work";
  const fs::path outcome_dir = config.out_dir / "outcomes";
  fs::create_directories(outcome_dir);

  TaskDeps deps;
  deps.llm = &llm;
  deps.exec = &exec;
  deps.completion = {config.temperature, config.max_tokens};
  deps.pressure_mode = config.pressure_mode;
  deps.work_dir = work;
  deps.feedback_budget = config.feedback_bytes;
  deps.stop = stop;
  const Budgets budgets{config.translate_max, config.optimize_max};

  std::vector<TaskOutcome> outcomes(cases.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      const auto& c = cases[i];
      outcomes[i] = run_task(c, budgets, deps);
      write_text_atomically(outcome_dir / (c.manifest.case_id + ".json"), outcome_to_json(outcomes[i]).dump(2) + "\n");
      if (!config.keep_scratch) drop_scratch(work / c.manifest.case_id);
      if (progress) {
        std::lock_guard lock(progress_mu);
        const auto& o = outcomes[i];
        std::string line = c.manifest.case_id + ": " + std::string(to_string(o.status));
        if (o.passed) line += " after " + std::to_string(o.attempts_used) + " attempt(s)";
        if (o.final_speedup) line += ", speedup " + format_decimal(*o.final_speedup, 2) + "x";
        if (!o.error.empty()) line += " (" + o.error + ")";
        progress(line);
      }
    }
  };
  {
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(config.parallel), cases.size());
    std::vector<std::jthread> pool;
    for (std::size_t k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
  }

  std::vector<CaseResult> results;
  for (const auto& o : outcomes) results.push_back(case_result(o));
  summary.metrics = compute_metrics(results, config.translate_max, config.include_failed, run_label(config));
  summary.outcomes = std::move(outcomes);

  write_text_atomically(config.out_dir / "metrics.json", metrics_to_json(summary.metrics).dump(2) + "\n");
  write_text_atomically(config.out_dir / "report.txt", render_text(summary.metrics));
  nlohmann::json run = {{"format", "rvvport-run"}, {"version", 1}, {"label", run_label(config)}};
  nlohmann::json settings = nlohmann::json::object();
  for (const auto& key : config_keys()) settings[key] = get_setting(config, key);
  run["settings"] = settings;
  write_text_atomically(config.out_dir / "run.json", run.dump(2) + "\n");
  return summary;
}

LoadedOutcomes load_outcomes(const fs::path& dir) {
  std::error_code ec;
  fs::path source = dir;
  if (fs::is_directory(dir / "outcomes", ec)) source = dir / "outcomes";
  if (!fs::is_directory(source, ec)) throw Error("no outcomes: " + dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(source)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  LoadedOutcomes loaded;
  for (const auto& f : files) {
    try {
      std::ifstream in(f);
      loaded.outcomes.push_back(outcome_from_json(nlohmann::json::parse(in)));
    } catch (const std::exception& e) {
      loaded.warnings.push_back("skipping corrupt outcome " + f.filename().string() + ": " + e.what());
    }
  }
  if (loaded.outcomes.empty()) throw Error("no outcomes in " + source.string());
  std::sort(loaded.outcomes.begin(), loaded.outcomes.end(),
            [](const TaskOutcome& a, const TaskOutcome& b) { return a.case_id < b.case_id; });
  return loaded;
}

}  // namespace rvvport
