#include <gtest/gtest.h>

#include <fstream>

#include "rvvport/error.hpp"
#include "rvvport/executors.hpp"
#include "rvvport/process.hpp"
#include "scenario.hpp"

using namespace rvvport;
using namespace rvvport::testing;
namespace fs = std::filesystem;

TEST(Median, LowerMiddle) {
  EXPECT_EQ(median_cost({5}), 5);
  EXPECT_EQ(median_cost({9, 1, 5}), 5);
  EXPECT_EQ(median_cost({4, 1, 3, 2}), 2);
  EXPECT_THROW(median_cost({}), ContractError);
}

TEST(CostLine, LastNonEmptyLine) {
  EXPECT_EQ(parse_cost_line("warming up\n12345\n\n"), 12345);
  EXPECT_THROW(parse_cost_line("12345\ndone\n"), ExecError);
  EXPECT_THROW(parse_cost_line("-5\n"), ExecError);
  EXPECT_THROW(parse_cost_line(""), ExecError);
}

TEST(ToolchainConfigCheck, RejectsBadValues) {
  ToolchainConfig c;
  EXPECT_NO_THROW(c.validate());
  c.vlens = {96};
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.compile_cmd_template = "{cc} -o {output}";
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.runner_cmd_template = "{runner} {binary} {colour}";
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Process, TimeoutKillsTheGroup) {
  TempDir tmp("proc");
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_shell("sleep 5 & sleep 5; wait", tmp.path(), tmp.path() / "o", tmp.path() / "e",
                           std::chrono::seconds(1));
  EXPECT_TRUE(r.timed_out);
  EXPECT_LT(std::chrono::steady_clock::now() - t0, std::chrono::seconds(4));
}

TEST(Process, TemplatesAndQuoting) {
  EXPECT_EQ(expand_template("{a}-{b}", {{"a", "1"}, {"b", "2"}}), "1-2");
  EXPECT_THROW(expand_template("{nope}", {{"a", "1"}}), ConfigError);
  EXPECT_EQ(shell_quote("it's"), "'it'\\''s'");
}

TEST(Mock, Directives) {
  TempDir tmp("mock");
  MockExecutor m;
  const auto c = bundled_case("vec_add_f32");
  auto bad = m.compile("// @mock compile-error: boom\nint x;\n", c, Harness::kFunctional, tmp.path() / "a");
  EXPECT_FALSE(bad.success);
  EXPECT_NE(bad.diagnostics.find("boom"), std::string::npos);

  auto ok = m.compile("/* @mock test-fail: 256 */\nint x;\n", c, Harness::kFunctional, tmp.path() / "b");
  ASSERT_TRUE(ok.success);
  const auto t = m.run_tests(ok.artifact_path, tmp.path() / "b");
  EXPECT_FALSE(t.all_passed);
  EXPECT_TRUE(t.per_vlen.at(128).passed);
  EXPECT_FALSE(t.per_vlen.at(256).passed);
  EXPECT_NE(t.report().find("VLEN=256"), std::string::npos);

  auto fast = m.compile("// @mock cost-ns: 25000\n", c, Harness::kPerf, tmp.path() / "c");
  auto native = m.compile("int native;\n", c, Harness::kPerf, tmp.path() / "d");
  const auto p = m.run_perf(fast.artifact_path, native.artifact_path, tmp.path() / "e");
  EXPECT_EQ(p.speedup, Rational(4));

  auto broken = m.compile("// @mock perf-error\n", c, Harness::kPerf, tmp.path() / "f");
  EXPECT_THROW(m.run_perf(broken.artifact_path, native.artifact_path, tmp.path() / "g"), ExecError);
}

namespace {

// Host toolchain standing in for the cross compiler; the "emulator" passes
// the VLEN through the environment so a candidate can misbehave at one width.
ToolchainConfig host_config() {
  ToolchainConfig c;
  c.cc = RVVPORT_HOST_CC;
  c.flags = "-O2";
  c.compile_cmd_template = "{cc} {flags} -o {output} {inputs} -lm";
  c.runner = "env";
  c.runner_cmd_template = "{runner} FAKE_VLEN={vlen} {binary}";
  c.perf_runs = 3;
  c.run_timeout_s = 30;
  return c;
}

const char* kVlenSensitive = R"(#include <stddef.h>
#include <stdlib.h>
#include <string.h>
void vec_add_f32(const float *a, const float *b, float *c, size_t n)
{
    const char *v = getenv("FAKE_VLEN");
    size_t limit = v && strcmp(v, "256") == 0 && n > 5 ? n - 1 : n;
    for (size_t i = 0; i < limit; i++)
        c[i] = a[i] + b[i];
}
)";

}  // namespace

TEST(HostToolchain, CompileErrorsCarryDiagnostics) {
  ToolchainExecutor exec(host_config());
  exec.probe();
  TempDir tmp("host");
  const auto r = exec.compile("void vec_add_f32(oops", bundled_case("vec_add_f32"), Harness::kFunctional, tmp.path());
  EXPECT_FALSE(r.success);
  EXPECT_NE(r.diagnostics.find("error"), std::string::npos) << r.diagnostics;
}

TEST(HostToolchain, FailureOnlyAtOneVlenIsReported) {
  ToolchainExecutor exec(host_config());
  TempDir tmp("host");
  const auto c = bundled_case("vec_add_f32");
  const auto r = exec.compile(kVlenSensitive, c, Harness::kFunctional, tmp.path());
  ASSERT_TRUE(r.success) << r.diagnostics;
  const auto t = exec.run_tests(r.artifact_path, tmp.path());
  EXPECT_FALSE(t.all_passed);
  EXPECT_TRUE(t.per_vlen.at(128).passed);
  EXPECT_FALSE(t.per_vlen.at(256).passed);
  EXPECT_NE(t.per_vlen.at(256).output_tail.find("n="), std::string::npos) << t.per_vlen.at(256).output_tail;
}

TEST(HostToolchain, CorpusHarnessesPassScalarImplementations) {
  ToolchainExecutor exec(host_config());
  for (const auto& id : {"vec_add_f32", "sat_add_u8", "dot_f32", "max_s32", "deinterleave_u8", "qdmulh_s16",
                         "h2v1_upsample"}) {
    TempDir tmp("host");
    const auto c = bundled_case(id);
    const auto scalar = read_file(source_dir() / "tests" / "data" / "scalar" / (std::string(id) + ".c"));
    const auto r = exec.compile(scalar, c, Harness::kFunctional, tmp.path() / "f");
    ASSERT_TRUE(r.success) << id << ": " << r.diagnostics;
    const auto t = exec.run_tests(r.artifact_path, tmp.path() / "f");
    EXPECT_TRUE(t.all_passed) << id << ": " << t.report();
  }
}

TEST(HostToolchain, PerfMeasuresBothBinaries) {
  ToolchainExecutor exec(host_config());
  TempDir tmp("host");
  const auto c = bundled_case("vec_add_f32");
  const auto scalar = read_file(source_dir() / "tests" / "data" / "scalar" / "vec_add_f32.c");
  const auto a = exec.compile(scalar, c, Harness::kPerf, tmp.path() / "a");
  const auto b = exec.compile(scalar, c, Harness::kPerf, tmp.path() / "b");
  ASSERT_TRUE(a.success && b.success);
  const auto p = exec.run_perf(a.artifact_path, b.artifact_path, tmp.path() / "perf");
  EXPECT_GT(p.native_cost_ns, 0);
  EXPECT_GT(p.translated_cost_ns, 0);
  EXPECT_EQ(p.runs, 3);
  EXPECT_GT(p.speedup, Rational(0));
  EXPECT_TRUE(fs::exists(tmp.path() / "perf"));
}

TEST(HostToolchain, ProbeNamesMissingTool) {
  auto c = host_config();
  c.cc = "definitely-not-a-compiler-xyz";
  try {
    ToolchainExecutor(c).probe();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("definitely-not-a-compiler-xyz"), std::string::npos);
  }
}
