#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "rvvport/rational.hpp"

namespace rvvport {

struct CompileResult {
  bool success = false;
  std::string diagnostics;  // compiler stderr and stdout, tail-truncated
  std::filesystem::path artifact_path;  // set on success
  bool timed_out = false;
};

struct VlenRun {
  bool passed = false;
  int exit_code = 0;  // -1 when killed by timeout or signal
  bool timed_out = false;
  std::string output_tail;  // last 4 KiB of stdout + stderr
};

struct TestResult {
  bool all_passed = false;
  std::map<int, VlenRun> per_vlen;

  /// Failing-test report for repair prompts: which VLENs failed and how.
  std::string report() const;
};

struct PerfResult {
  std::int64_t translated_cost_ns = 0;
  std::int64_t native_cost_ns = 0;
  Rational speedup{1};  // native / translated
  int runs = 0;
};

/// native / translated; throws ContractError unless both are positive.
Rational speedup(std::int64_t native_cost_ns, std::int64_t translated_cost_ns);

nlohmann::json to_json(const CompileResult& r);
nlohmann::json to_json(const TestResult& r);
nlohmann::json to_json(const PerfResult& r);
PerfResult perf_from_json(const nlohmann::json& j);

}  // namespace rvvport
