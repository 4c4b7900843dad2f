#include "rvvport/orchestrator.hpp"

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "rvvport/digest.hpp"
#include "rvvport/error.hpp"
#include "rvvport/rvv_front.hpp"

namespace rvvport {
namespace fs = std::filesystem;
namespace {

constexpr std::array<std::string_view, 12> kStateNames{
    "Init",     "Translate", "Compile", "FuncTest",   "BaselinePerf", "Optimize",
    "OptCompile", "OptTest", "OptPerf", "SelectBest", "Done",         "Failed"};

using S = FsmState;
constexpr std::array<std::pair<S, S>, 20> kTransitions{{
    {S::kInit, S::kTranslate},
    {S::kTranslate, S::kCompile},
    {S::kCompile, S::kFuncTest},
    {S::kCompile, S::kTranslate},
    {S::kCompile, S::kFailed},
    {S::kFuncTest, S::kBaselinePerf},
    {S::kFuncTest, S::kTranslate},
    {S::kFuncTest, S::kFailed},
    {S::kBaselinePerf, S::kOptimize},
    {S::kOptimize, S::kOptCompile},
    {S::kOptimize, S::kSelectBest},
    {S::kOptCompile, S::kOptTest},
    {S::kOptCompile, S::kOptimize},
    {S::kOptCompile, S::kSelectBest},
    {S::kOptTest, S::kOptPerf},
    {S::kOptTest, S::kOptimize},
    {S::kOptTest, S::kSelectBest},
    {S::kOptPerf, S::kOptimize},
    {S::kOptPerf, S::kSelectBest},
    {S::kSelectBest, S::kDone},
}};

std::string two_digits(int n) { return (n < 10 ? "0" : "") + std::to_string(n); }

/// Thrown inside the runner to stop the task with status kError.
struct Abort {
  std::string message;
};

class TaskRunner {
 public:
  TaskRunner(const ValidatedCase& c, const Budgets& budgets, const TaskDeps& deps)
      : case_(c), budgets_(budgets), deps_(deps) {
    out_.case_id = c.manifest.case_id;
    case_dir_ = deps.work_dir / out_.case_id;
  }

  TaskOutcome run() {
    if (budgets_.translate_max < 1 || budgets_.optimize_max < 1) throw ContractError("budgets must be at least 1");
    if (!deps_.llm || !deps_.exec) throw ContractError("run_task needs an LLM client and an executor");
    out_.trace.push_back(FsmState::kInit);
    if (deps_.write_log) open_log();
    try {
      if (translate()) {
        try {
          optimize();
        } catch (const Error& e) {
          // v0 already passed; an environment failure only ends the search.
          out_.error = std::string("optimization stopped early: ") + e.what();
        }
        go(FsmState::kSelectBest);
        out_.best_variant = select_best(out_.variants);
        if (out_.best_variant->perf) out_.final_speedup = out_.best_variant->perf->speedup;
        go(FsmState::kDone);
        out_.status = TaskStatus::kPassed;
        out_.passed = true;
      } else {
        out_.status = TaskStatus::kFailed;
        out_.attempts_used = budgets_.translate_max;
      }
    } catch (const Abort& a) {
      out_.status = TaskStatus::kError;
      out_.error = a.message;
    } catch (const Error& e) {
      out_.status = TaskStatus::kError;
      out_.error = e.what();
    }
    if (out_.status == TaskStatus::kError) {
      out_.passed = false;
      out_.best_variant.reset();
      out_.final_speedup.reset();
      if (out_.attempts_used == 0) out_.attempts_used = budgets_.translate_max;
    }
    return std::move(out_);
  }

 private:
  void go(FsmState next) {
    const FsmState cur = out_.trace.back();
    if (!transition_allowed(cur, next)) {
      throw std::logic_error("illegal transition " + std::string(to_string(cur)) + " -> " +
                             std::string(to_string(next)));
    }
    out_.trace.push_back(next);
  }

  std::string now() const { return deps_.clock ? deps_.clock() : utc_timestamp(); }

  void open_log() {
    const auto dir = case_dir_ / "log";
    fs::create_directories(dir);
    log_.open(dir / "attempts.jsonl", std::ios::trunc);
    if (!log_) throw ConfigError("cannot write attempt log under " + dir.string());
  }

  void record(AttemptRecord a) {
    a.finished_at = now();
    if (log_.is_open()) {
      log_ << to_json(a).dump() << "\n";
      log_.flush();
    }
    out_.attempts.push_back(std::move(a));
  }

  AttemptRecord begin_attempt(Phase phase, int no, const PromptBundle& bundle) {
    AttemptRecord a;
    a.case_id = out_.case_id;
    a.phase = phase;
    a.attempt_no = no;
    a.purpose = std::string(to_string(bundle.purpose));
    a.prompt_digest = bundle.context_digest;
    a.started_at = now();
    return a;
  }

  std::string ask(const PromptBundle& bundle) {
    CallContext ctx{out_.case_id, ++out_.llm_calls, std::string(to_string(bundle.purpose))};
    return deps_.llm->complete(ctx, bundle.messages, deps_.completion);
  }

  void check_stop() const {
    if (deps_.stop.stop_requested()) throw Abort{"cancelled"};
  }

  Variant make_variant(const std::string& code) {
    Variant v;
    v.variant_id = static_cast<int>(out_.variants.size());
    v.code = code;
    v.passed_all_tests = true;
    try {
      const auto ir = parse_function(code, case_.manifest.function_signature);
      v.pressure = analyze_function(ir, deps_.pressure_mode);
    } catch (const Error& e) {
      v.pressure_error = e.what();
    }
    return v;
  }

  void measure(Variant& v, const fs::path& attempt_dir) {
    if (!native_artifact_ && native_error_.empty()) {
      const auto cr = deps_.exec->compile(case_.native_text, case_, Harness::kPerf, case_dir_ / "native");
      if (cr.success) {
        native_artifact_ = cr.artifact_path;
      } else {
        native_error_ = "native reference benchmark failed to build: " + cr.diagnostics;
      }
    }
    if (!native_artifact_) {
      v.perf_error = native_error_;
      return;
    }
    const auto cr = deps_.exec->compile(v.code, case_, Harness::kPerf, attempt_dir / "perf");
    if (!cr.success) {
      v.perf_error = "benchmark build failed: " + cr.diagnostics;
      return;
    }
    try {
      v.perf = deps_.exec->run_perf(cr.artifact_path, *native_artifact_, attempt_dir);
    } catch (const ExecError& e) {
      v.perf_error = std::string("no perf data: ") + e.what();
    }
  }

  /// Returns true once a candidate passes every functional test.
  bool translate() {
    std::string prev_code;
    Feedback feedback;
    for (int t = 1; t <= budgets_.translate_max; ++t) {
      go(FsmState::kTranslate);
      check_stop();
      const auto bundle = t == 1 ? build_translate_prompt(case_)
                                 : build_repair_prompt(case_, prev_code, feedback, deps_.feedback_budget);
      auto a = begin_attempt(Phase::kTranslation, t, bundle);
      const auto dir = case_dir_ / ("t" + two_digits(t));

      std::string response;
      try {
        response = ask(bundle);
      } catch (const LlmError& e) {
        a.error = std::string("LLM call failed: ") + e.what();
        record(std::move(a));
        out_.attempts_used = t;
        throw Abort{std::string("LLM call failed: ") + e.what()};
      }
      a.response_digest = sha256_hex(response);
      go(FsmState::kCompile);

      const bool last = t == budgets_.translate_max;
      try {
        a.code = extract_code(response);
      } catch (const NoCodeError& e) {
        a.error = std::string("no code emitted: ") + e.what();
        a.compile = CompileResult{false, a.error, {}, false};
        feedback = {Feedback::Kind::kCompile, a.error};
        prev_code.clear();
        record(std::move(a));
        if (last) go(FsmState::kFailed);
        continue;
      }
      prev_code = a.code;

      const auto cr = deps_.exec->compile(a.code, case_, Harness::kFunctional, dir);
      a.compile = cr;
      if (!cr.success) {
        feedback = {Feedback::Kind::kCompile, cr.diagnostics};
        record(std::move(a));
        if (last) go(FsmState::kFailed);
        continue;
      }

      go(FsmState::kFuncTest);
      const auto tr = deps_.exec->run_tests(cr.artifact_path, dir);
      a.test = tr;
      if (!tr.all_passed) {
        feedback = {Feedback::Kind::kTest, tr.report()};
        record(std::move(a));
        if (last) go(FsmState::kFailed);
        continue;
      }

      out_.attempts_used = t;
      Variant v0 = make_variant(a.code);
      go(FsmState::kBaselinePerf);
      measure(v0, dir);
      a.variant_id = v0.variant_id;
      a.perf = v0.perf;
      if (!v0.perf_error.empty()) a.error = v0.perf_error;
      out_.variants.push_back(std::move(v0));
      record(std::move(a));
      return true;
    }
    return false;
  }

  void optimize() {
    std::optional<Feedback> last_failure;
    for (int o = 1; o <= budgets_.optimize_max; ++o) {
      go(FsmState::kOptimize);
      if (deps_.stop.stop_requested()) {
        out_.error = "cancelled during optimization";
        return;
      }
      const Variant best = select_best(out_.variants);
      const auto bundle = build_optimize_prompt(case_, best.code, best.pressure, best.perf, last_failure,
                                                deps_.feedback_budget);
      auto a = begin_attempt(Phase::kOptimization, o, bundle);
      const auto dir = case_dir_ / ("o" + two_digits(o));

      std::string response;
      try {
        response = ask(bundle);
      } catch (const LlmError& e) {
        a.error = std::string("LLM call failed: ") + e.what();
        record(std::move(a));
        out_.error = "optimization stopped early: " + std::string(e.what());
        return;
      }
      a.response_digest = sha256_hex(response);
      go(FsmState::kOptCompile);

      auto after_failure = [&](Feedback fb, AttemptRecord&& rec) {
        last_failure = std::move(fb);
        record(std::move(rec));
      };

      try {
        a.code = extract_code(response);
      } catch (const NoCodeError& e) {
        a.error = std::string("no code emitted: ") + e.what();
        a.compile = CompileResult{false, a.error, {}, false};
        const std::string msg = a.error;
        after_failure({Feedback::Kind::kCompile, msg}, std::move(a));
        continue;
      }
      const auto cr = deps_.exec->compile(a.code, case_, Harness::kFunctional, dir);
      a.compile = cr;
      if (!cr.success) {
        after_failure({Feedback::Kind::kCompile, cr.diagnostics}, std::move(a));
        continue;
      }

      go(FsmState::kOptTest);
      const auto tr = deps_.exec->run_tests(cr.artifact_path, dir);
      a.test = tr;
      if (!tr.all_passed) {
        after_failure({Feedback::Kind::kTest, tr.report()}, std::move(a));
        continue;
      }

      go(FsmState::kOptPerf);
      Variant v = make_variant(a.code);
      measure(v, dir);
      a.variant_id = v.variant_id;
      a.perf = v.perf;
      if (!v.perf_error.empty()) a.error = v.perf_error;
      out_.variants.push_back(std::move(v));
      last_failure.reset();
      record(std::move(a));
    }
  }

  const ValidatedCase& case_;
  Budgets budgets_;
  const TaskDeps& deps_;
  TaskOutcome out_;
  fs::path case_dir_;
  std::ofstream log_;
  std::optional<fs::path> native_artifact_;
  std::string native_error_;
};

nlohmann::json optional_json(const auto& value) {
  return value ? to_json(*value) : nlohmann::json(nullptr);
}

}  // namespace

std::string_view to_string(FsmState s) { return kStateNames[static_cast<std::size_t>(s)]; }

std::optional<FsmState> parse_fsm_state(std::string_view s) {
  for (std::size_t i = 0; i < kStateNames.size(); ++i) {
    if (kStateNames[i] == s) return static_cast<FsmState>(i);
  }
  return std::nullopt;
}

bool transition_allowed(FsmState from, FsmState to) {
  for (const auto& [a, b] : kTransitions) {
    if (a == from && b == to) return true;
  }
  return false;
}

std::string_view to_string(Phase p) { return p == Phase::kTranslation ? "translation" : "optimization"; }

std::string_view to_string(TaskStatus s) {
  switch (s) {
    case TaskStatus::kPassed: return "passed";
    case TaskStatus::kFailed: return "failed";
    case TaskStatus::kError: return "error";
  }
  return "error";
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

nlohmann::json to_json(const AttemptRecord& a) {
  nlohmann::json j = {{"case", a.case_id},
                      {"phase", to_string(a.phase)},
                      {"attempt_no", a.attempt_no},
                      {"purpose", a.purpose},
                      {"prompt_version", kPromptVersion},
                      {"prompt_digest", a.prompt_digest},
                      {"response_digest", a.response_digest},
                      {"code", a.code},
                      {"compile", optional_json(a.compile)},
                      {"test", optional_json(a.test)},
                      {"perf", optional_json(a.perf)},
                      {"error", a.error},
                      {"variant_id", a.variant_id ? nlohmann::json(*a.variant_id) : nlohmann::json(nullptr)},
                      {"started_at", a.started_at},
                      {"finished_at", a.finished_at}};
  return j;
}

nlohmann::json to_json(const Variant& v) {
  return {{"variant_id", v.variant_id},
          {"code", v.code},
          {"passed_all_tests", v.passed_all_tests},
          {"pressure", v.pressure ? pressure_to_json(*v.pressure) : nlohmann::json(nullptr)},
          {"pressure_error", v.pressure_error},
          {"perf", optional_json(v.perf)},
          {"perf_error", v.perf_error}};
}

Variant variant_from_json(const nlohmann::json& j) {
  Variant v;
  v.variant_id = j.at("variant_id").get<int>();
  v.code = j.at("code").get<std::string>();
  v.passed_all_tests = j.at("passed_all_tests").get<bool>();
  if (!j.at("pressure").is_null()) v.pressure = pressure_from_json(j.at("pressure"));
  v.pressure_error = j.value("pressure_error", "");
  if (!j.at("perf").is_null()) v.perf = perf_from_json(j.at("perf"));
  v.perf_error = j.value("perf_error", "");
  return v;
}

const Variant& select_best(const std::vector<Variant>& variants) {
  const Variant* best = nullptr;
  for (const auto& v : variants) {
    if (!v.passed_all_tests) continue;
    if (!best) {
      best = &v;
      continue;
    }
    const bool v_perf = v.perf.has_value();
    const bool b_perf = best->perf.has_value();
    bool better = false;
    if (v_perf != b_perf) {
      better = v_perf;
    } else if (v_perf && v.perf->speedup != best->perf->speedup) {
      better = v.perf->speedup > best->perf->speedup;
    } else {
      better = v.variant_id < best->variant_id;
    }
    if (better) best = &v;
  }
  if (!best) throw ContractError("select_best needs at least one passing variant");
  return *best;
}

nlohmann::json outcome_to_json(const TaskOutcome& o) {
  nlohmann::json trace = nlohmann::json::array();
  for (auto s : o.trace) trace.push_back(to_string(s));
  nlohmann::json variants = nlohmann::json::array();
  for (const auto& v : o.variants) variants.push_back(to_json(v));
  return {{"format", "rvvport-outcome"},
          {"version", 1},
          {"case_id", o.case_id},
          {"status", to_string(o.status)},
          {"passed", o.passed},
          {"attempts_used", o.attempts_used},
          {"final_speedup", o.final_speedup ? nlohmann::json(to_string(*o.final_speedup)) : nlohmann::json(nullptr)},
          {"best_variant_id", o.best_variant ? nlohmann::json(o.best_variant->variant_id) : nlohmann::json(nullptr)},
          {"variants", variants},
          {"trace", trace},
          {"llm_calls", o.llm_calls},
          {"attempt_count", o.attempts.size()},
          {"error", o.error}};
}

TaskOutcome outcome_from_json(const nlohmann::json& j) {
  try {
    if (j.value("format", "") != "rvvport-outcome") throw Error("not an outcome file");
    TaskOutcome o;
    o.case_id = j.at("case_id").get<std::string>();
    const auto status = j.at("status").get<std::string>();
    if (status == "passed") {
      o.status = TaskStatus::kPassed;
    } else if (status == "failed") {
      o.status = TaskStatus::kFailed;
    } else if (status == "error") {
      o.status = TaskStatus::kError;
    } else {
      throw Error("unknown status '" + status + "'");
    }
    o.passed = j.at("passed").get<bool>();
    o.attempts_used = j.at("attempts_used").get<int>();
    if (!j.at("final_speedup").is_null()) o.final_speedup = parse_rational(j.at("final_speedup").get<std::string>());
    for (const auto& v : j.at("variants")) o.variants.push_back(variant_from_json(v));
    if (!j.at("best_variant_id").is_null()) {
      const int id = j.at("best_variant_id").get<int>();
      for (const auto& v : o.variants) {
        if (v.variant_id == id) o.best_variant = v;
      }
      if (!o.best_variant) throw Error("best_variant_id " + std::to_string(id) + " not among variants");
    }
    for (const auto& s : j.at("trace")) {
      auto st = parse_fsm_state(s.get<std::string>());
      if (!st) throw Error("unknown state in trace");
      o.trace.push_back(*st);
    }
    o.llm_calls = j.at("llm_calls").get<int>();
    o.error = j.value("error", "");
    if (o.passed != (o.status == TaskStatus::kPassed) || o.passed != o.best_variant.has_value()) {
      throw Error("inconsistent passed/status/best_variant");
    }
    return o;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed outcome: ") + e.what());
  }
}

TaskOutcome run_task(const ValidatedCase& c, const Budgets& budgets, const TaskDeps& deps) {
  return TaskRunner(c, budgets, deps).run();
}

}  // namespace rvvport
