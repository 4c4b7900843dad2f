#include <gtest/gtest.h>

#include <fstream>

#include "rvvport/error.hpp"
#include "rvvport/pipeline.hpp"
#include "scenario.hpp"

using namespace rvvport;
using namespace rvvport::testing;

namespace {

RunConfig bundled_config(const fs::path& out, int parallel) {
  RunConfig c;
  c.corpus_dir = bundled_corpus();
  c.replay = source_dir() / "tests" / "data" / "replay" / "bundled.json";
  c.no_exec = true;
  c.optimize_max = 2;
  c.parallel = parallel;
  c.out_dir = out;
  return c;
}

RunSummary run_bundled(const fs::path& out, int parallel, std::vector<std::string>* lines = nullptr) {
  const auto c = bundled_config(out, parallel);
  auto llm = make_llm_client(c);
  auto exec = make_executor(c);
  return run_pipeline(c, *llm, *exec, {}, [&](const std::string& l) {
    if (lines) lines->push_back(l);
  });
}

}  // namespace

TEST(Pipeline, BundledReplayRun) {
  TempDir tmp("pipe");
  std::vector<std::string> lines;
  const auto s = run_bundled(tmp.path(), 1, &lines);
  ASSERT_EQ(s.outcomes.size(), 7u);
  EXPECT_EQ(lines.size(), 7u);
  EXPECT_EQ(s.metrics.n_total, 7);
  EXPECT_EQ(s.metrics.n_passed, 6);
  EXPECT_EQ(s.metrics.label, "replay");
  for (const char* f : {"metrics.json", "report.txt", "run.json"}) EXPECT_TRUE(fs::exists(tmp.path() / f)) << f;
  for (const auto& o : s.outcomes) {
    EXPECT_TRUE(fs::exists(tmp.path() / "outcomes" / (o.case_id + ".json")));
    EXPECT_TRUE(fs::exists(tmp.path() / "work" / o.case_id / "log" / "attempts.jsonl"));
    // Scratch directories are dropped unless asked to keep them.
    EXPECT_FALSE(fs::exists(tmp.path() / "work" / o.case_id / "t01"));
  }
  const auto max = std::find_if(s.outcomes.begin(), s.outcomes.end(), [](auto& o) { return o.case_id == "max_s32"; });
  ASSERT_NE(max, s.outcomes.end());
  EXPECT_EQ(max->status, TaskStatus::kFailed);
}

TEST(Pipeline, ParallelMatchesSerial) {
  TempDir a("pipe"), b("pipe");
  const auto serial = run_bundled(a.path(), 1);
  const auto par = run_bundled(b.path(), 3);
  EXPECT_EQ(serial.metrics, par.metrics);
  ASSERT_EQ(serial.outcomes.size(), par.outcomes.size());
  for (std::size_t i = 0; i < serial.outcomes.size(); ++i) {
    EXPECT_EQ(serial.outcomes[i].case_id, par.outcomes[i].case_id);
    EXPECT_EQ(serial.outcomes[i].trace, par.outcomes[i].trace);
    EXPECT_EQ(serial.outcomes[i].final_speedup, par.outcomes[i].final_speedup);
  }
  EXPECT_EQ(read_file(a.path() / "report.txt"), read_file(b.path() / "report.txt"));
}

TEST(Pipeline, KeepScratch) {
  TempDir tmp("pipe");
  auto c = bundled_config(tmp.path(), 1);
  c.cases = {"vec_add_f32"};
  c.keep_scratch = true;
  auto llm = make_llm_client(c);
  auto exec = make_executor(c);
  run_pipeline(c, *llm, *exec);
  EXPECT_TRUE(fs::exists(tmp.path() / "work" / "vec_add_f32" / "t01" / "candidate.c"));
}

TEST(Pipeline, UnknownCaseListsValidIds) {
  auto c = bundled_config("unused", 1);
  c.cases = {"vec_add_f32", "nope"};
  std::vector<std::string> warnings;
  try {
    select_cases(c, warnings);
    FAIL();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("nope"), std::string::npos);
    EXPECT_NE(msg.find("dot_f32"), std::string::npos);
  }
}

TEST(Pipeline, RunLabel) {
  RunConfig c;
  EXPECT_EQ(run_label(c), "run");
  c.replay = "x.json";
  EXPECT_EQ(run_label(c), "replay");
  c.model = "some-model";
  EXPECT_EQ(run_label(c), "some-model");
}

TEST(Pipeline, LoadOutcomesSkipsCorruptFiles) {
  TempDir tmp("pipe");
  const auto s = run_bundled(tmp.path(), 1);
  std::ofstream(tmp.path() / "outcomes" / "zz_broken.json") << "{ not json";
  const auto loaded = load_outcomes(tmp.path());
  EXPECT_EQ(loaded.outcomes.size(), 7u);
  ASSERT_EQ(loaded.warnings.size(), 1u);
  EXPECT_NE(loaded.warnings[0].find("zz_broken"), std::string::npos);
  const auto via_sub = load_outcomes(tmp.path() / "outcomes");
  EXPECT_EQ(via_sub.outcomes.size(), 7u);

  // Recomputing from the files gives the stored metrics.
  std::vector<CaseResult> results;
  for (const auto& o : loaded.outcomes) results.push_back(case_result(o));
  EXPECT_EQ(compute_metrics(results, 10, false, "replay"), s.metrics);
}

TEST(Pipeline, LoadOutcomesEmptyDirThrows) {
  TempDir tmp("pipe");
  EXPECT_THROW(load_outcomes(tmp.path()), Error);
  fs::create_directories(tmp.path() / "outcomes");
  std::ofstream(tmp.path() / "outcomes" / "a.json") << "[]";
  EXPECT_THROW(load_outcomes(tmp.path()), Error);
}

TEST(Pipeline, AtomicWriteReplaces) {
  TempDir tmp("pipe");
  write_text_atomically(tmp.path() / "f.txt", "one");
  write_text_atomically(tmp.path() / "f.txt", "two");
  EXPECT_EQ(read_file(tmp.path() / "f.txt"), "two");
  std::size_t n = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(tmp.path())) ++n;
  EXPECT_EQ(n, 1u);
}
