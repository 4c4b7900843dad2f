#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include <json.hpp>

#include "rvvport/corpus.hpp"
#include "rvvport/executors.hpp"
#include "rvvport/llm.hpp"
#include "rvvport/pressure.hpp"
#include "rvvport/prompts.hpp"
#include "rvvport/results.hpp"

namespace rvvport {

enum class FsmState {
  kInit,
  kTranslate,
  kCompile,
  kFuncTest,
  kBaselinePerf,
  kOptimize,
  kOptCompile,
  kOptTest,
  kOptPerf,
  kSelectBest,
  kDone,
  kFailed,
};

std::string_view to_string(FsmState s);
std::optional<FsmState> parse_fsm_state(std::string_view s);

/// The complete transition relation; run_task never takes any other edge.
bool transition_allowed(FsmState from, FsmState to);

enum class Phase { kTranslation, kOptimization };
std::string_view to_string(Phase p);

struct AttemptRecord {
  std::string case_id;
  int attempt_no = 0;  // 1-based within the phase
  Phase phase = Phase::kTranslation;
  std::string purpose;
  std::string prompt_digest;
  std::string response_digest;
  std::string code;
  std::optional<CompileResult> compile;
  std::optional<TestResult> test;
  std::optional<PerfResult> perf;
  std::string error;  // no code, perf failure, analysis failure ...
  std::optional<int> variant_id;
  std::string started_at;
  std::string finished_at;
};

nlohmann::json to_json(const AttemptRecord& a);

struct Variant {
  int variant_id = 0;
  std::string code;
  std::optional<PressureReport> pressure;
  std::string pressure_error;
  std::optional<PerfResult> perf;
  std::string perf_error;
  bool passed_all_tests = false;
};

nlohmann::json to_json(const Variant& v);
Variant variant_from_json(const nlohmann::json& j);

/// Highest speedup among passing variants; variants without perf data rank
/// below any with it; ties go to the lowest id. Throws ContractError when no
/// variant passed.
const Variant& select_best(const std::vector<Variant>& variants);

enum class TaskStatus {
  kPassed,
  kFailed,  // translation budget exhausted
  kError,   // aborted: LLM unavailable, cancelled, broken environment
};

std::string_view to_string(TaskStatus s);

struct TaskOutcome {
  std::string case_id;
  TaskStatus status = TaskStatus::kFailed;
  bool passed = false;
  int attempts_used = 0;
  std::optional<Variant> best_variant;
  std::optional<Rational> final_speedup;
  std::vector<Variant> variants;
  std::vector<AttemptRecord> attempts;
  std::vector<FsmState> trace;
  int llm_calls = 0;
  std::string error;
};

nlohmann::json outcome_to_json(const TaskOutcome& o);
TaskOutcome outcome_from_json(const nlohmann::json& j);

struct Budgets {
  int translate_max = 10;
  int optimize_max = 10;
};

struct TaskDeps {
  LlmClient* llm = nullptr;
  Executor* exec = nullptr;
  CompletionOptions completion;
  FootprintMode pressure_mode = FootprintMode::kPaperLiteral;
  std::filesystem::path work_dir = "work";
  std::size_t feedback_budget = kDefaultFeedbackBudget;
  bool write_log = true;  // work/<case>/log/attempts.jsonl
  std::function<std::string()> clock;  // timestamps; defaults to UTC ISO-8601
  std::stop_token stop;
};

/// Drives one case through translation, testing, baseline measurement and
/// the optimization loop.
TaskOutcome run_task(const ValidatedCase& c, const Budgets& budgets, const TaskDeps& deps);

std::string utc_timestamp();

}  // namespace rvvport
