#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rvvport/corpus.hpp"
#include "rvvport/llm.hpp"
#include "rvvport/pressure.hpp"
#include "rvvport/results.hpp"

namespace rvvport {

/// Bumped whenever prompt wording changes; recorded in every attempt.
inline constexpr std::string_view kPromptVersion = "rvvport-prompts/1";

inline constexpr std::size_t kDefaultFeedbackBudget = 8192;

enum class PromptPurpose { kTranslate, kRepairCompile, kRepairTest, kOptimize };

std::string_view to_string(PromptPurpose purpose);

struct PromptBundle {
  std::vector<ChatMessage> messages;
  PromptPurpose purpose = PromptPurpose::kTranslate;
  std::string context_digest;  // SHA-256 over version, purpose and messages
};

/// What went wrong with the previous candidate.
struct Feedback {
  enum class Kind { kCompile, kTest };
  Kind kind = Kind::kCompile;
  std::string text;  // compiler output or failing-test report, verbatim
};

/// Keeps the first budget/4 bytes and a tail of at least a quarter of the
/// text, joined by an omission marker. Text within budget is returned as is.
std::string truncate_feedback(std::string_view text, std::size_t budget);

PromptBundle build_translate_prompt(const ValidatedCase& c);

/// The translate conversation followed by the previous candidate and the
/// feedback. Throws ContractError when feedback.text is empty.
PromptBundle build_repair_prompt(const ValidatedCase& c, std::string_view previous_code, const Feedback& feedback,
                                 std::size_t feedback_budget = kDefaultFeedbackBudget);

/// Asks for a faster version of known-good code, steering by the pressure
/// report and, when measured, the speedup against the native reference.
/// `last_failure` describes a broken previous optimization attempt.
PromptBundle build_optimize_prompt(const ValidatedCase& c, std::string_view correct_code,
                                   const std::optional<PressureReport>& pressure, const std::optional<PerfResult>& perf,
                                   const std::optional<Feedback>& last_failure = std::nullopt,
                                   std::size_t feedback_budget = kDefaultFeedbackBudget);

/// Contents of the last fenced code block; an unterminated final fence runs
/// to the end. Without fences, the whole response when it starts like C.
/// Throws NoCodeError otherwise.
std::string extract_code(std::string_view response);

}  // namespace rvvport
