#include "rvvport/prompts.hpp"

#include <regex>
#include <sstream>

#include "rvvport/digest.hpp"
#include "rvvport/error.hpp"

namespace rvvport {
namespace {

constexpr std::string_view kTranslatorPersona =
    "You are an expert in Arm Neon and in the RISC-V Vector extension (RVV) v1.0 C intrinsics. "
    "You port Neon intrinsic C code to RVV intrinsic C code that compiles with "
    "`-march=rv64gcv -O3` and behaves exactly like the original.";

constexpr std::string_view kOptimizerPersona =
    "You are an expert in RISC-V Vector extension (RVV) v1.0 performance tuning. "
    "You rewrite correct RVV intrinsic C code so that it runs faster while producing identical results.";

std::string requirements(const ValidatedCase& c) {
  std::ostringstream os;
  os << "Requirements:\n"
     << "1. Keep the function signature exactly as given: `" << c.manifest.function_signature << "`.\n"
     << "2. Use only the v1.0 intrinsic names with the `__riscv_` prefix (for example "
        "`__riscv_vle32_v_f32m1`) and include <riscv_vector.h>.\n"
     << "3. Handle the remaining elements with vsetvl inside the loop; do not add a scalar tail loop and do not "
        "assume a fixed number of lanes.\n"
     << "4. The code must be correct for every VLEN, in particular 128 and 256 bits.\n"
     << "5. Keep any helper functions the kernel needs; do not write a main function.\n"
     << "Answer with exactly one fenced C code block containing the complete code.";
  return os.str();
}

std::string fenced(std::string_view lang, std::string_view body) {
  std::string out = "```";
  out += lang;
  out += "\n";
  out += body;
  if (!body.empty() && body.back() != '\n') out += "\n";
  out += "```";
  return out;
}

std::string translate_request(const ValidatedCase& c) {
  std::ostringstream os;
  os << "Translate the following Neon code to RVV. The function to port is `" << c.manifest.function_signature
     << "`.\n\n"
     << fenced("c", c.source_text);
  return os.str();
}

PromptBundle finish(PromptPurpose purpose, std::vector<ChatMessage> messages) {
  PromptBundle b;
  b.purpose = purpose;
  b.messages = std::move(messages);
  std::string material(kPromptVersion);
  material += '\0';
  material += to_string(purpose);
  for (const auto& m : b.messages) {
    material += '\0';
    material += to_string(m.role);
    material += '\0';
    material += std::to_string(m.content.size());
    material += ':';
    material += m.content;
  }
  b.context_digest = sha256_hex(material);
  return b;
}

void require_source(const ValidatedCase& c) {
  if (c.source_text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw ContractError("case " + c.manifest.case_id + " has an empty source");
  }
}

bool utf8_continuation(char ch) { return (static_cast<unsigned char>(ch) & 0xC0) == 0x80; }

}  // namespace

std::string_view to_string(PromptPurpose purpose) {
  switch (purpose) {
    case PromptPurpose::kTranslate: return "translate";
    case PromptPurpose::kRepairCompile: return "repair_compile";
    case PromptPurpose::kRepairTest: return "repair_test";
    case PromptPurpose::kOptimize: return "optimize";
  }
  return "translate";
}

std::string truncate_feedback(std::string_view text, std::size_t budget) {
  if (text.size() <= budget) return std::string(text);
  std::size_t head = budget / 4;
  const std::size_t quarter = (text.size() + 3) / 4;
  std::size_t tail = std::max(budget - head, quarter);
  if (head + tail >= text.size()) return std::string(text);
  while (head > 0 && utf8_continuation(text[head])) --head;
  std::size_t tail_start = text.size() - tail;
  while (tail_start > head && utf8_continuation(text[tail_start])) --tail_start;
  const std::size_t omitted = tail_start - head;
  std::string out(text.substr(0, head));
  if (!out.empty() && out.back() != '\n') out += '\n';
  out += "[... " + std::to_string(omitted) + " bytes omitted ...]\n";
  out += text.substr(tail_start);
  return out;
}

PromptBundle build_translate_prompt(const ValidatedCase& c) {
  require_source(c);
  std::vector<ChatMessage> msgs{
      {Role::kSystem, std::string(kTranslatorPersona) + "\n\n" + requirements(c)},
      {Role::kUser, translate_request(c)},
  };
  return finish(PromptPurpose::kTranslate, std::move(msgs));
}

PromptBundle build_repair_prompt(const ValidatedCase& c, std::string_view previous_code, const Feedback& feedback,
                                 std::size_t feedback_budget) {
  require_source(c);
  if (feedback.text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw ContractError("repair prompt for case " + c.manifest.case_id + " needs compiler or test feedback");
  }
  auto bundle = build_translate_prompt(c);
  auto msgs = std::move(bundle.messages);
  msgs.push_back({Role::kAssistant, previous_code.empty() ? std::string("(the previous answer contained no code)")
                                                           : fenced("c", previous_code)});
  std::ostringstream os;
  const bool compile = feedback.kind == Feedback::Kind::kCompile;
  if (compile) {
    os << "The code above failed to compile. Compiler output:\n\n";
  } else {
    os << "The code above compiled but failed the functional tests. Test report:\n\n";
  }
  os << fenced("", truncate_feedback(feedback.text, feedback_budget)) << "\n\n"
     << "Repair the code based on this " << (compile ? "compiler output" : "report")
     << ". Answer with the complete corrected code in one fenced C code block.";
  msgs.push_back({Role::kUser, os.str()});
  return finish(compile ? PromptPurpose::kRepairCompile : PromptPurpose::kRepairTest, std::move(msgs));
}

PromptBundle build_optimize_prompt(const ValidatedCase& c, std::string_view correct_code,
                                   const std::optional<PressureReport>& pressure, const std::optional<PerfResult>& perf,
                                   const std::optional<Feedback>& last_failure, std::size_t feedback_budget) {
  if (correct_code.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ContractError("optimize prompt for case " + c.manifest.case_id + " needs the current correct code");
  }
  std::ostringstream os;
  os << "This RVV implementation of `" << c.manifest.function_signature
     << "` passes all functional tests at VLEN 128 and 256:\n\n"
     << fenced("c", correct_code) << "\n\n";
  if (pressure) {
    os << "Register pressure analysis (live vector values weighted by LMUL):\n" << render_pressure(*pressure) << "\n";
  } else {
    os << "Register pressure analysis: not available for this code.\n\n";
  }
  if (perf) {
    os << "Performance: the current best runs at " << format_trimmed(perf->speedup) << "\u00d7 the native reference ("
       << "native " << perf->native_cost_ns << " ns, this code " << perf->translated_cost_ns << " ns).\n\n";
  } else {
    os << "Performance: no measurement is available for this code yet.\n\n";
  }
  if (pressure) {
    const Rational budget(pressure->register_budget);
    const auto peak = format_trimmed(pressure->pressure);
    if (pressure->spills_predicted) {
      os << "The peak pressure of " << peak << " exceeds the " << pressure->register_budget
         << " vector registers, so the compiler will spill. Reduce the number of vector values live at the same "
            "time: shorten live ranges, lower LMUL or split the work into smaller steps.\n";
    } else if (pressure->pressure * 2 <= budget) {
      os << "The peak pressure of " << peak << " leaves " << format_trimmed(budget - pressure->pressure) << " of "
         << pressure->register_budget
         << " vector registers free. There is headroom: try a larger LMUL (for example m1 to m2 or m4) or unroll "
            "the loop so each iteration processes more elements.\n";
    } else {
      os << "The peak pressure of " << peak << " is close to the " << pressure->register_budget
         << " vector registers. Prefer changes that do not raise it, such as fewer redundant loads or cheaper "
            "instruction choices.\n";
    }
  } else {
    os << "Consider a larger LMUL or loop unrolling, and avoid raising the number of live vector values.\n";
  }
  if (last_failure) {
    os << "\nYour previous optimization attempt was rejected. "
       << (last_failure->kind == Feedback::Kind::kCompile ? "Compiler output:" : "Test report:") << "\n\n"
       << fenced("", truncate_feedback(last_failure->text, feedback_budget)) << "\n";
  }
  os << "\nKeep the signature `" << c.manifest.function_signature
     << "` and the results unchanged. Answer with the complete optimized code in one fenced C code block.";
  std::vector<ChatMessage> msgs{
      {Role::kSystem, std::string(kOptimizerPersona)},
      {Role::kUser, os.str()},
  };
  return finish(PromptPurpose::kOptimize, std::move(msgs));
}

std::string extract_code(std::string_view response) {
  static const std::regex open_fence(R"(^\s*```[A-Za-z0-9_+.-]*\s*$)");
  static const std::regex close_fence(R"(^\s*```\s*$)");
  std::vector<std::string> blocks;
  std::string current;
  bool inside = false;
  std::istringstream in{std::string(response)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!inside && std::regex_match(line, open_fence)) {
      inside = true;
      current.clear();
    } else if (inside && std::regex_match(line, close_fence)) {
      inside = false;
      blocks.push_back(current);
    } else if (inside) {
      current += line;
      current += '\n';
    }
  }
  if (inside) blocks.push_back(current);
  if (!blocks.empty()) {
    const auto& last = blocks.back();
    if (last.find_first_not_of(" \t\r\n") == std::string::npos) throw NoCodeError("no code block: last fence is empty");
    return last;
  }

  static const std::regex c_start(
      R"(^\s*(#|//|/\*|(static|inline|void|int|unsigned|signed|float|double|char|short|long|const|typedef|struct|enum|size_t|bool|u?int(8|16|32|64)_t|v[a-z0-9]+_t)\b))");
  const std::string text(response);
  if (std::regex_search(text, c_start, std::regex_constants::match_continuous)) return text;
  throw NoCodeError("no code block in response");
}

}  // namespace rvvport
