#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rvvport/function_ir.hpp"
#include "rvvport/liveness.hpp"
#include "rvvport/rational.hpp"
#include "rvvport/vector_type.hpp"

namespace rvvport {

inline constexpr int kVectorRegisterCount = 32;

struct LiveValue {
  std::string name;
  std::string type;
  Rational footprint;

  friend bool operator==(const LiveValue&, const LiveValue&) = default;
};

/// Peak LMUL-weighted vector register demand of one function.
struct PressureReport {
  std::string function;
  FootprintMode mode = FootprintMode::kPaperLiteral;
  Rational pressure{0};
  std::optional<int> hot_stmt;  // absent when the function has no statements
  int hot_line = 0;
  std::string hot_text;
  std::vector<Rational> per_stmt_pressure;  // by statement id
  std::vector<LiveValue> live_at_hot;       // sorted by name
  int register_budget = kVectorRegisterCount;
  bool spills_predicted = false;
  std::vector<std::string> dead_defs;  // defined somewhere, read nowhere

  friend bool operator==(const PressureReport&, const PressureReport&) = default;
};

/// per_stmt_pressure(i) is the footprint sum over IN(i) u OUT(i); the peak is
/// the maximum, attained first at hot_stmt.
PressureReport compute_pressure(const FunctionIr& ir, const LivenessResult& live,
                                FootprintMode mode = FootprintMode::kPaperLiteral);

/// Parse, solve and measure in one step.
PressureReport analyze_function(const FunctionIr& ir, FootprintMode mode = FootprintMode::kPaperLiteral);

/// Multi-line text block used by the analyze command and optimizer prompts.
std::string render_pressure(const PressureReport& report);

nlohmann::json pressure_to_json(const PressureReport& report);
PressureReport pressure_from_json(const nlohmann::json& j);

}  // namespace rvvport
