// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "random_ir.hpp"
#include "rvvport/error.hpp"
#include "rvvport/executors.hpp"
#include "rvvport/liveness.hpp"
#include "rvvport/metrics.hpp"
#include "rvvport/orchestrator.hpp"
#include "rvvport/pressure.hpp"
#include "rvvport/process.hpp"
#include "rvvport/results.hpp"
#include "rvvport/rvv_front.hpp"
#include "rvvport/vector_type.hpp"
#include "scenario.hpp"

using namespace rvvport;
using namespace rvvport::testing;
namespace fs = std::filesystem;

namespace {

enum class Verdict { kPass, kFail, kSkip };

struct Check {
  Verdict verdict = Verdict::kPass;
  std::string detail;
};

// Collects failed expectations; the first few are reported.
class Expect {
 public:
  void that(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_.size() < 5) failures_.push_back(what);
    ++count_;
  }
  Check result(const std::string& summary) const {
    if (count_ == 0) return {Verdict::kPass, summary};
    std::string d = std::to_string(count_) + " failed expectation(s): ";
    for (std::size_t i = 0; i < failures_.size(); ++i) d += (i ? "; " : "") + failures_[i];
    return {Verdict::kFail, d};
  }

 private:
  std::vector<std::string> failures_;
  int count_ = 0;
};

std::string sets_text(const VarSet& s) {
  std::string out = "{";
  for (const auto& v : s) out += (out.size() > 1 ? "," : "") + v;
  return out + "}";
}

Check liveness_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240917);
  Expect expect;
  std::set<std::string> lmuls_seen;
  const int kGraphs = 300;
  int nontrivial = 0;
  for (int g = 0; g < kGraphs; ++g) {
    const FunctionIr ir = random_ir(rng);
    for (const auto& [name, t] : ir.symbols) lmuls_seen.insert(to_string(t.lmul));
    expect.that(check_ir(ir).empty(), "graph " + std::to_string(g) + " is malformed");
    const auto solved = solve_liveness(ir);
    const auto oracle = oracle_liveness(ir);
    const auto reference = reference_liveness(ir);
    const std::string tag = "graph " + std::to_string(g);
    expect.that(solved == oracle, tag + ": solver differs from path-enumeration oracle");
    expect.that(solved == reference, tag + ": solver differs from reachability reference");

    // IN(i) = (OUT(i) - DEF(i)) u USE(i), OUT(i) = union of successor INs.
    const auto succ = statement_successors(ir);
    for (std::size_t i = 0; i < ir.stmts.size(); ++i) {
      VarSet in = solved.live_out[i];
      for (const auto& d : ir.stmts[i].defs) in.erase(d);
      in.insert(ir.stmts[i].uses.begin(), ir.stmts[i].uses.end());
      VarSet out;
      for (int s : succ[i]) out.insert(solved.live_in[s].begin(), solved.live_in[s].end());
      expect.that(in == solved.live_in[i], tag + " s" + std::to_string(i) + ": IN " + sets_text(solved.live_in[i]) +
                                               " but equation gives " + sets_text(in));
      expect.that(out == solved.live_out[i], tag + " s" + std::to_string(i) + ": OUT is not the union of successor INs");
      if (!solved.live_in[i].empty()) ++nontrivial;
    }
    expect.that(fixpoint_violations(ir, solved).empty(), tag + ": library fixpoint check disagrees");
  }
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect.that(lmuls_seen == std::set<std::string>{"1/2", "1", "2", "4"}, "not every LMUL in {1/2,1,2,4} was generated");
  expect.that(nontrivial > 100, "too few statements with live values to be meaningful");
  expect.that(secs < 10.0, "took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << kGraphs << " random CFGs (<=6 blocks, <=12 stmts, <=6 vars, LMUL 1/2..4): solver == oracle == reference, "
    << "fixpoint identity at every statement, " << std::fixed;
  d.precision(2);
  d << secs << " s";
  return expect.result(d.str());
}

Check pressure_formula() {
  Expect expect;
  // s0 scalar, s1 a = load, s2 b = load, s3 c = a + b (a stays live), s4
  // store c, s5 store a. At s3: IN = {a, b}, OUT = {a, c}; 3 x m2 = 6.
  const std::string straight = R"(#include <riscv_vector.h>
void three_live(const int32_t *p, int32_t *q, size_t n)
{
    size_t vl = __riscv_vsetvl_e32m2(n);
    vint32m2_t a = __riscv_vle32_v_i32m2(p, vl);
    vint32m2_t b = __riscv_vle32_v_i32m2(p + vl, vl);
    vint32m2_t c = __riscv_vadd_vv_i32m2(a, b, vl);
    __riscv_vse32_v_i32m2(q, c, vl);
    __riscv_vse32_v_i32m2(q + vl, a, vl);
}
)";
  const auto ir = parse_function_named(straight, "three_live");
  const auto live = solve_liveness(ir);
  const auto report = compute_pressure(ir, live);
  const auto ref = reference_pressure(ir, reference_liveness(ir));
  expect.that(report.pressure == Rational(6), "straight-line pressure is " + to_string(report.pressure) + ", want 6");
  expect.that(report.hot_stmt == 3, "hot statement is not s3");
  expect.that(report.live_at_hot.size() == 3, "expected 3 values live at the peak");
  expect.that(!report.spills_predicted, "6 registers must not predict spills");
  for (std::size_t i = 0; i < ref.size(); ++i) {
    expect.that(to_double(report.per_stmt_pressure[i]) == ref[i], "per-statement pressure differs at s" + std::to_string(i));
  }

  std::string wide = "#include <riscv_vector.h>\nvoid seventeen(const int32_t *p, size_t vl)\n{\n";
  std::string args;
  for (int k = 0; k < 17; ++k) {
    wide += "    vint32m2_t v" + std::to_string(k) + " = __riscv_vle32_v_i32m2(p + " + std::to_string(k) + " * vl, vl);\n";
    args += (k ? ", v" : "v") + std::to_string(k);
  }
  wide += "    consume17(" + args + ");\n}\n";
  const auto wir = parse_function_named(wide, "seventeen");
  const auto wrep = analyze_function(wir);
  expect.that(wrep.pressure == Rational(34), "17 x m2 pressure is " + to_string(wrep.pressure) + ", want 34");
  expect.that(wrep.spills_predicted, "34 > 32 must predict spills");
  expect.that(wrep.register_budget == 32, "register budget is not 32");
  return expect.result("three live m2 values -> pressure 6 at s3; 17 x m2 -> 34 with spills predicted (budget 32)");
}

Check metric_consistency() {
  Expect expect;
  // 3 cases at 1 attempt, 31 at 2: 34 passing cases, 65 attempts.
  std::vector<CaseResult> all;
  int attempts = 0;
  for (int k = 0; k < 34; ++k) {
    const int a = k < 3 ? 1 : 2;
    attempts += a;
    all.push_back({"c" + std::to_string(k), true, a, Rational(1), "passed"});
  }
  expect.that(attempts == 65, "fixture attempt sum is not 65");
  // Independent arithmetic: sum of (1 + 10 - a) / 10 = (34 * 11 - 65) / 10.
  const Rational want_eff(34 * 11 - 65, 10);
  const auto m = compute_metrics(all, 10, false, "model");
  expect.that(m.efficiency_score == want_eff, "efficiency " + to_string(m.efficiency_score) + " != 309/10");
  expect.that(format_decimal(m.efficiency_score, 1) == "30.9", "efficiency displays as " + format_decimal(m.efficiency_score, 1));
  expect.that(m.avg_attempts && *m.avg_attempts == Rational(65, 34), "average attempts is not 65/34");
  expect.that(m.avg_attempts && format_decimal(*m.avg_attempts, 2) == "1.91", "average displays wrongly");
  expect.that(format_decimal(m.pass_rate, 1) == "100.0", "all-pass rate is not 100.0");

  auto some_fail = all;
  some_fail[0].passed = false;
  some_fail[0].status = "failed";
  some_fail[1].passed = false;
  some_fail[1].status = "failed";
  const auto pr = pass_rate(some_fail);
  expect.that(pr == Rational(3200, 34), "32/34 pass rate is " + to_string(pr));
  expect.that(format_decimal(pr, 1) == "94.1", "32/34 pass rate displays as " + format_decimal(pr, 1));
  return expect.result("34 cases, 65 attempts -> efficiency 30.9, avg 1.91, pass 100.0%; 32/34 -> 94.1%");
}

Check speedup_formula() {
  Expect expect;
  const auto top = speedup(593, 100);
  expect.that(top == Rational(593, 100), "593:100 gives " + to_string(top));
  expect.that(format_decimal(top, 2) == "5.93", "5.93 displays as " + format_decimal(top, 2));
  expect.that(speedup(5930000, 1000000) == Rational(593, 100), "scaled costs change the ratio");
  expect.that(speedup(123456, 123456) == Rational(1), "equal costs are not 1.0");
  bool threw = false;
  try {
    speedup(0, 10);
  } catch (const ContractError&) {
    threw = true;
  }
  expect.that(threw, "zero cost accepted");
  return expect.result("native:translated 5.93:1 -> 5.93 exactly; equal costs -> 1");
}

// Mock executor whose perf numbers are injected: candidates containing
// "@inject fast" run at 10/13 of the native cost, everything else at par.
class InjectedPerf : public MockExecutor {
 public:
  PerfResult run_perf(const fs::path& translated, const fs::path& native, const fs::path& scratch) override {
    (void)native;
    (void)scratch;
    const bool fast = read_file(translated).find("@inject fast") != std::string::npos;
    PerfResult p;
    p.runs = 1;
    p.native_cost_ns = 130;
    p.translated_cost_ns = fast ? 100 : 130;
    p.speedup = speedup(p.native_cost_ns, p.translated_cost_ns);
    return p;
  }
};

Check fsm_traces() {
  Expect expect;
  const std::string good = read_file(bundled_corpus() / "vec_add_f32" / "native_rvv.c");
  const std::string broken = code_reply(good, {"compile-error: unknown type name 'vfloat32x4_t'"});

  // (a) success on the third translation attempt.
  std::vector<ReplayClient::Entry> script{entry("translate", broken), entry("repair_compile", broken),
                                          entry("repair_compile", code_reply(good)),
                                          entry("optimize", code_reply(good))};
  TempDir tmp("acc");
  const auto a = run_scripted("vec_add_f32", script, {10, 1}, tmp.path());
  using S = FsmState;
  const std::vector<S> prefix{S::kInit,      S::kTranslate, S::kCompile,  S::kTranslate,   S::kCompile,
                              S::kTranslate, S::kCompile,   S::kFuncTest, S::kBaselinePerf, S::kOptimize};
  expect.that(a.outcome.status == TaskStatus::kPassed, "(a) did not pass");
  expect.that(a.outcome.attempts_used == 3, "(a) attempts_used = " + std::to_string(a.outcome.attempts_used));
  expect.that(a.outcome.trace.size() > prefix.size() &&
                  std::equal(prefix.begin(), prefix.end(), a.outcome.trace.begin()),
              "(a) trace does not start Init..FuncTest->BaselinePerf->Optimize");
  expect.that(a.outcome.trace.size() >= 2 && a.outcome.trace.end()[-2] == S::kSelectBest &&
                  a.outcome.trace.back() == S::kDone,
              "(a) trace does not end SelectBest->Done");
  for (std::size_t i = 1; i < a.outcome.trace.size(); ++i) {
    expect.that(transition_allowed(a.outcome.trace[i - 1], a.outcome.trace[i]), "(a) illegal transition taken");
  }

  // Byte-reproducible log: rerun in the same place.
  fs::remove_all(tmp.path() / "vec_add_f32");
  const auto a2 = run_scripted("vec_add_f32", script, {10, 1}, tmp.path());
  expect.that(!a.log.empty() && a.log == a2.log, "(a) attempt log differs between identical runs");
  expect.that(outcome_to_json(a.outcome) == outcome_to_json(a2.outcome), "(a) outcome differs between identical runs");

  // (b) ten compile failures.
  std::vector<ReplayClient::Entry> fails{entry("translate", broken)};
  for (int k = 1; k < 10; ++k) fails.push_back(entry("repair_compile", broken));
  const auto b = run_scripted("vec_add_f32", fails, {10, 10}, tmp.path() / "b");
  expect.that(b.outcome.status == TaskStatus::kFailed, "(b) status is not failed");
  expect.that(b.outcome.llm_calls == 10, "(b) made " + std::to_string(b.outcome.llm_calls) + " LLM calls");
  expect.that(!b.outcome.trace.empty() && b.outcome.trace.back() == S::kFailed, "(b) trace does not end in Failed");
  expect.that(!b.outcome.best_variant, "(b) a failed task has a best variant");

  // (c) injected speedup 1.3 beats the 1.0 baseline.
  const auto c = bundled_case("vec_add_f32");
  ReplayClient llm({{"vec_add_f32",
                     {entry("translate", code_reply(good)), entry("optimize", code_reply(good, {"@inject fast"}))}}});
  InjectedPerf exec;
  TaskDeps deps;
  deps.llm = &llm;
  deps.exec = &exec;
  deps.work_dir = tmp.path() / "c";
  deps.clock = [] { return std::string("T"); };
  const auto co = run_task(c, {10, 1}, deps);
  expect.that(co.status == TaskStatus::kPassed, "(c) did not pass");
  expect.that(co.variants.size() == 2, "(c) expected baseline and one optimized variant");
  expect.that(co.best_variant && co.best_variant->variant_id == 1, "(c) optimized variant not selected");
  expect.that(co.final_speedup && *co.final_speedup == Rational(13, 10), "(c) final speedup is not 1.3");
  expect.that(co.variants.size() == 2 && co.variants[0].perf && co.variants[0].perf->speedup == Rational(1),
              "(c) baseline speedup is not 1.0");
  return expect.result("(a) 3 attempts, Init->...->Compile->FuncTest->BaselinePerf->Optimize..->SelectBest->Done, "
                       "byte-identical logs; (b) 10 compile failures -> Failed after 10 calls; (c) 1.3 beats 1.0");
}

Check parser_and_types() {
  Expect expect;
  // Grammar enumerated independently: kinds x SEW x LMUL (SEW/LMUL <= 64,
  // floats 16..64) x fields (1, or 2..8 with LMUL x fields <= 8), plus masks.
  std::set<std::string> want;
  const std::vector<std::pair<std::string, double>> lm{{"mf8", 0.125}, {"mf4", 0.25}, {"mf2", 0.5}, {"m1", 1},
                                                       {"m2", 2},      {"m4", 4},     {"m8", 8}};
  for (const std::string kind : {"int", "uint", "float"}) {
    for (int sew : {8, 16, 32, 64}) {
      if (kind == "float" && sew == 8) continue;
      for (const auto& [suffix, l] : lm) {
        if (sew / l > 64) continue;
        want.insert("v" + kind + std::to_string(sew) + suffix + "_t");
        for (int f = 2; f <= 8; ++f) {
          if (l * f <= 8) want.insert("v" + kind + std::to_string(sew) + suffix + "x" + std::to_string(f) + "_t");
        }
      }
    }
  }
  const std::size_t data_types = want.size();
  for (int n : {1, 2, 4, 8, 16, 32, 64}) want.insert("vbool" + std::to_string(n) + "_t");

  std::set<std::string> got;
  for (const auto& t : all_vector_types()) {
    const auto name = vector_type_name(t);
    got.insert(name);
    const auto back = parse_vector_type(name);
    expect.that(back && *back == t, name + " does not round-trip");
  }
  expect.that(data_types == 285, "independent enumeration found " + std::to_string(data_types) + " data types");
  expect.that(got == want, "library enumeration differs from the grammar");
  expect.that(!parse_vector_type("vint64mf2_t") && !parse_vector_type("vfloat8m1_t") &&
                  !parse_vector_type("vint32m4x3_t"),
              "illegal type accepted");

  const auto ir = parse_function(read_file(bundled_corpus() / "vec_add_f32" / "native_rvv.c"),
                                 "void vec_add_f32(const float *a, const float *b, float *c, size_t n)");
  const auto& cfg = ir.cfg;
  expect.that(cfg.block_count() == 3, "vector-add CFG has " + std::to_string(cfg.block_count()) + " blocks");
  if (cfg.block_count() == 3) {
    expect.that(cfg.entry == 0 && cfg.exit == 2, "entry/exit numbering");
    expect.that(cfg.successors[0] == std::set<int>{1, 2}, "entry should branch to the body or the exit");
    expect.that(cfg.successors[1] == std::set<int>{1, 2}, "body should loop or leave");
    expect.that(cfg.blocks[2].empty(), "exit block is not empty");
  }
  expect.that(check_ir(ir).empty(), "vector-add IR violates invariants");

  const std::string with_goto = "void f(int n)\n{\n    int i = 0;\nagain:\n    i++;\n    if (i < n)\n        goto again;\n}\n";
  bool located = false;
  std::string message;
  try {
    parse_function_named(with_goto, "f");
  } catch (const ParseError& e) {
    message = e.what();
    located = e.line() == 4 || e.line() == 7;
  }
  expect.that(located, "goto not rejected with a line number (got \"" + message + "\")");
  expect.that(message.find("goto") != std::string::npos || message.find("label") != std::string::npos,
              "diagnostic does not name goto/label");
  return expect.result("292 type names round-trip (285 data + 7 masks); vector-add -> 3-block CFG; goto rejected at " +
                       message.substr(0, message.find(':', 5)));
}

Check end_to_end_smoke() {
  ToolchainConfig tc;
  if (const char* cc = std::getenv("RVVPORT_CC")) tc.cc = cc;
  if (const char* runner = std::getenv("RVVPORT_RUNNER")) tc.runner = runner;
  if (find_executable(tc.cc).empty() || find_executable(tc.runner).empty()) {
    return {Verdict::kSkip, "no " + tc.cc + " / " + tc.runner + " on PATH (set RVVPORT_CC / RVVPORT_RUNNER)"};
  }
  const auto start = std::chrono::steady_clock::now();
  Expect expect;
  ToolchainExecutor exec(tc);
  exec.probe();
  auto llm = ReplayClient::from_file(source_dir() / "tests" / "data" / "replay" / "vec_add_e2e.json");
  TempDir tmp("e2e");
  TaskDeps deps;
  deps.llm = &llm;
  deps.exec = &exec;
  deps.work_dir = tmp.path();
  const auto o = run_task(bundled_case("vec_add_f32"), {10, 1}, deps);
  expect.that(o.status == TaskStatus::kPassed, "translation did not pass: " + o.error);
  bool both_vlens = false;
  for (const auto& a : o.attempts) {
    if (a.test && a.test->all_passed && a.test->per_vlen.count(128) && a.test->per_vlen.count(256)) both_vlens = true;
  }
  expect.that(both_vlens, "no attempt passed at both VLEN 128 and 256");
  expect.that(o.final_speedup && *o.final_speedup > Rational(0), "no positive speedup");
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect.that(secs < 120, "took " + std::to_string(secs) + " s");
  return expect.result("vec_add_f32 compiled with " + tc.flags + ", passed at VLEN 128/256, speedup " +
                       (o.final_speedup ? format_decimal(*o.final_speedup, 2) : std::string("-")));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"AC1 liveness oracle equivalence", liveness_oracle_equivalence},
      {"AC2 register pressure formula", pressure_formula},
      {"AC3 metric consistency", metric_consistency},
      {"AC4 speedup formula", speedup_formula},
      {"AC5 orchestration traces", fsm_traces},
      {"AC6 parser and type grammar", parser_and_types},
      {"AC7 end-to-end smoke", end_to_end_smoke},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c = {Verdict::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = c.verdict == Verdict::kPass ? "PASS" : c.verdict == Verdict::kFail ? "FAIL" : "SKIP";
    std::cout << tag << "  " << name << ": " << c.detail << std::endl;
    failed += c.verdict == Verdict::kFail;
  }
  return failed == 0 ? 0 : 1;
}
