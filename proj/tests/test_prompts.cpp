#include <gtest/gtest.h>

#include "rvvport/error.hpp"
#include "rvvport/prompts.hpp"
#include "scenario.hpp"

using namespace rvvport;
using namespace rvvport::testing;

namespace {

std::string all_text(const PromptBundle& b) {
  std::string s;
  for (const auto& m : b.messages) s += m.content + "\n";
  return s;
}

}  // namespace

TEST(Prompts, TranslateCarriesSourceAndSignature) {
  const auto c = bundled_case("sat_add_u8");
  const auto b = build_translate_prompt(c);
  ASSERT_GE(b.messages.size(), 2u);
  EXPECT_EQ(b.messages.front().role, Role::kSystem);
  EXPECT_EQ(b.purpose, PromptPurpose::kTranslate);
  const auto text = all_text(b);
  EXPECT_NE(text.find("vqaddq_u8"), std::string::npos);
  EXPECT_NE(text.find(c.manifest.function_signature), std::string::npos);
  EXPECT_EQ(b.context_digest.size(), 64u);
  EXPECT_EQ(build_translate_prompt(c).context_digest, b.context_digest);
}

TEST(Prompts, RepairAppendsPreviousCodeAndFeedback) {
  const auto c = bundled_case("vec_add_f32");
  const auto b = build_repair_prompt(c, "int broken;", {Feedback::Kind::kCompile, "error: expected ';'"});
  EXPECT_EQ(b.purpose, PromptPurpose::kRepairCompile);
  ASSERT_GE(b.messages.size(), 4u);
  EXPECT_EQ(b.messages[b.messages.size() - 2].role, Role::kAssistant);
  EXPECT_NE(b.messages.back().content.find("expected ';'"), std::string::npos);
  const auto t = build_repair_prompt(c, "x", {Feedback::Kind::kTest, "functional tests failed at VLEN=256"});
  EXPECT_EQ(t.purpose, PromptPurpose::kRepairTest);
  EXPECT_THROW(build_repair_prompt(c, "x", {Feedback::Kind::kTest, ""}), ContractError);
}

TEST(Prompts, OptimizeMentionsPressureAndSpeed) {
  const auto c = bundled_case("vec_add_f32");
  PressureReport p;
  p.function = "vec_add_f32";
  p.pressure = Rational(3);
  PerfResult perf;
  perf.native_cost_ns = 100;
  perf.translated_cost_ns = 143;
  perf.speedup = speedup(100, 143);
  const auto text = all_text(build_optimize_prompt(c, c.native_text, p, perf));
  EXPECT_NE(text.find("3 of 32"), std::string::npos) << text;
  EXPECT_NE(text.find("0.7"), std::string::npos) << text;
  EXPECT_NE(text.find("LMUL"), std::string::npos);
}

TEST(Truncation, ShortTextUnchanged) { EXPECT_EQ(truncate_feedback("short", 100), "short"); }

TEST(Truncation, KeepsHeadAndTailWithMarker) {
  std::string text;
  for (int i = 0; i < 2000; ++i) text += "line " + std::to_string(i) + "\n";
  const auto out = truncate_feedback(text, 1024);
  EXPECT_EQ(out.substr(0, 256), text.substr(0, 256));
  EXPECT_EQ(out.substr(out.size() - 200), text.substr(text.size() - 200));
  EXPECT_NE(out.find("bytes omitted"), std::string::npos);
  EXPECT_LT(out.size(), text.size());
}

TEST(Truncation, NeverSplitsUtf8) {
  std::string text;
  for (int i = 0; i < 3000; ++i) text += "\xc3\xa9";  // é
  for (std::size_t budget : {64u, 65u, 66u, 1001u}) {
    const auto out = truncate_feedback(text, budget);
    // Every byte sequence is complete: continuation bytes never follow ASCII.
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      const unsigned char a = out[i], b = out[i + 1];
      if ((b & 0xC0) == 0x80) EXPECT_TRUE(a >= 0xC0 || (a & 0xC0) == 0x80) << budget << " at " << i;
    }
    EXPECT_NE((static_cast<unsigned char>(out.front()) & 0xC0), 0x80u);
  }
}

TEST(ExtractCode, LastFenceWins) {
  EXPECT_EQ(extract_code("first\n```c\nint a;\n```\nthen\n```c\nint b;\n```\n"), "int b;\n");
  EXPECT_EQ(extract_code("```\nvoid f(void) {}\n```"), "void f(void) {}\n");
}

TEST(ExtractCode, UnterminatedFenceAndBareCode) {
  EXPECT_EQ(extract_code("Here:\n```c\nint x;\n"), "int x;\n");
  EXPECT_NE(extract_code("#include <riscv_vector.h>\nvoid f(void) {}\n").find("void f"), std::string::npos);
  EXPECT_THROW(extract_code("I am unable to help with that."), NoCodeError);
}
