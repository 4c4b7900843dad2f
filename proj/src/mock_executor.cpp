#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "rvvport/error.hpp"
#include "rvvport/executors.hpp"
#include "rvvport/process.hpp"

namespace rvvport {
namespace fs = std::filesystem;
namespace {

/// Value of `@mock <name>` (text after an optional ':'), if present.
std::optional<std::string> directive(const std::string& text, const std::string& name) {
  const std::string key = "@mock " + name;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto at = line.find(key);
    if (at == std::string::npos) continue;
    auto rest = line.substr(at + key.size());
    if (!rest.empty() && rest.front() == ':') rest.erase(0, 1);
    const auto b = rest.find_first_not_of(" \t");
    if (b == std::string::npos) return std::string();
    auto e = rest.find_last_not_of(" \t\r");
    // Drop a trailing comment terminator.
    if (e >= 1 && rest.compare(e - 1, 2, "*/") == 0) e = rest.find_last_not_of(" \t", e - 2);
    return e == std::string::npos || e < b ? std::string() : rest.substr(b, e - b + 1);
  }
  return std::nullopt;
}

std::string read_artifact(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ExecError("mock artifact missing: " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::int64_t scripted_cost(const std::string& text) {
  if (directive(text, "perf-error")) throw ExecError("benchmark output does not end with a nanosecond count");
  if (auto v = directive(text, "cost-ns")) {
    try {
      const auto cost = std::stoll(*v);
      if (cost > 0) return cost;
    } catch (const std::exception&) {
    }
    throw ExecError("mock cost-ns must be a positive integer, got \"" + *v + "\"");
  }
  return MockExecutor::kDefaultCostNs;
}

}  // namespace

MockExecutor::MockExecutor(ToolchainConfig config) : cfg_(std::move(config)) { cfg_.validate(); }

CompileResult MockExecutor::compile(const std::string& candidate, const ValidatedCase& c, Harness harness,
                                    const fs::path& scratch) {
  (void)c;
  (void)harness;
  fs::create_directories(scratch);
  {
    std::ofstream(scratch / "candidate.c", std::ios::binary) << candidate;
  }
  CompileResult r;
  if (auto err = directive(candidate, "compile-error")) {
    r.diagnostics = err->empty() ? "candidate.c: error: mock compile failure" : "candidate.c: error: " + *err;
    std::ofstream(scratch / "stderr.txt", std::ios::binary) << r.diagnostics << "\n";
    return r;
  }
  // The "binary" is the source itself so later steps can read the directives.
  const auto bin = scratch / "bin";
  std::ofstream(bin, std::ios::binary) << candidate;
  r.success = true;
  r.artifact_path = bin;
  return r;
}

TestResult MockExecutor::run_tests(const fs::path& artifact, const fs::path& scratch) {
  (void)scratch;
  const auto text = read_artifact(artifact);
  std::vector<int> failing;
  if (auto list = directive(text, "test-fail")) {
    std::istringstream in(*list);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        failing.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw ExecError("mock test-fail expects VLENs, got \"" + *list + "\"");
      }
    }
  }
  const bool timeout = directive(text, "timeout").has_value();
  TestResult t;
  t.all_passed = true;
  bool first = true;
  for (int vlen : cfg_.vlens) {
    VlenRun run;
    if (timeout && first) {
      run.timed_out = true;
      run.exit_code = -1;
      run.output_tail = "timeout after " + std::to_string(cfg_.run_timeout_s) + " s\n";
    } else if (std::find(failing.begin(), failing.end(), vlen) != failing.end()) {
      run.exit_code = 1;
      run.output_tail = "mismatch at VLEN=" + std::to_string(vlen) + ": expected output differs\n";
    } else {
      run.passed = true;
    }
    first = false;
    t.all_passed = t.all_passed && run.passed;
    t.per_vlen[vlen] = std::move(run);
  }
  return t;
}

PerfResult MockExecutor::run_perf(const fs::path& translated, const fs::path& native, const fs::path& scratch) {
  (void)scratch;
  PerfResult p;
  p.runs = cfg_.perf_runs;
  p.translated_cost_ns = scripted_cost(read_artifact(translated));
  p.native_cost_ns = scripted_cost(read_artifact(native));
  p.speedup = speedup(p.native_cost_ns, p.translated_cost_ns);
  return p;
}

}  // namespace rvvport
