#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "rvvport/error.hpp"
#include "rvvport/executors.hpp"
#include "rvvport/process.hpp"

namespace rvvport {
namespace fs = std::filesystem;
namespace {

constexpr std::size_t kDiagnosticBytes = 64 * 1024;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw ExecError("cannot write " + path.string());
}

std::string read_all(const fs::path& path) { return file_tail(path, static_cast<std::size_t>(-1) / 2); }

std::string combined_tail(const fs::path& out, const fs::path& err, std::size_t bytes) {
  std::string text = file_tail(out, bytes);
  const std::string e = file_tail(err, bytes);
  if (!text.empty() && !e.empty() && text.back() != '\n') text += '\n';
  text += e;
  return text.size() > bytes ? text.substr(text.size() - bytes) : text;
}

std::string first_word(const std::string& s) {
  std::istringstream in(s);
  std::string w;
  in >> w;
  return w;
}

bool uses_placeholder(const std::string& tmpl, const std::string& name) {
  return tmpl.find("{" + name + "}") != std::string::npos;
}

}  // namespace

void ToolchainConfig::validate() const {
  if (vlens.empty()) throw ConfigError("at least one VLEN is required");
  for (int v : vlens) {
    if (v < 32 || v > 65536 || (v & (v - 1)) != 0) {
      throw ConfigError("VLEN " + std::to_string(v) + " is not a power of two in [32, 65536]");
    }
  }
  if (compile_timeout_s <= 0 || run_timeout_s <= 0) throw ConfigError("timeouts must be positive");
  if (perf_runs < 1) throw ConfigError("perf runs must be at least 1");
  for (const char* p : {"output", "inputs"}) {
    if (!uses_placeholder(compile_cmd_template, p)) {
      throw ConfigError(std::string("compile template lacks {") + p + "}: " + compile_cmd_template);
    }
  }
  if (!uses_placeholder(runner_cmd_template, "binary")) {
    throw ConfigError("runner template lacks {binary}: " + runner_cmd_template);
  }
  // Reject unknown placeholders early.
  expand_template(compile_cmd_template, {{"cc", ""}, {"flags", ""}, {"inputs", ""}, {"output", ""}});
  expand_template(runner_cmd_template, {{"runner", ""}, {"vlen", ""}, {"binary", ""}});
}

int ToolchainConfig::perf_vlen() const { return *std::max_element(vlens.begin(), vlens.end()); }

std::int64_t median_cost(std::vector<std::int64_t> samples) {
  if (samples.empty()) throw ContractError("median of no samples");
  std::sort(samples.begin(), samples.end());
  return samples[(samples.size() - 1) / 2];
}

std::int64_t parse_cost_line(const std::string& text) {
  std::istringstream in(text);
  std::string line, last;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) last = line;
  }
  static const std::regex digits("^[0-9]+$");
  if (!std::regex_match(last, digits)) {
    throw ExecError("benchmark output does not end with a nanosecond count (last line: \"" + last.substr(0, 80) + "\")");
  }
  try {
    return std::stoll(last);
  } catch (const std::out_of_range&) {
    throw ExecError("benchmark cost out of range: " + last);
  }
}

ToolchainExecutor::ToolchainExecutor(ToolchainConfig config) : cfg_(std::move(config)) { cfg_.validate(); }

void ToolchainExecutor::probe() {
  const auto cc = first_word(cfg_.cc);
  if (cc.empty() || find_executable(cc).empty()) throw ConfigError("compiler not found: " + cfg_.cc);
  if (uses_placeholder(cfg_.runner_cmd_template, "runner")) {
    const auto runner = first_word(cfg_.runner);
    if (runner.empty() || find_executable(runner).empty()) throw ConfigError("emulator not found: " + cfg_.runner);
  }
}

CompileResult ToolchainExecutor::compile(const std::string& candidate, const ValidatedCase& c, Harness harness,
                                         const fs::path& scratch) {
  fs::create_directories(scratch);
  const auto dir = fs::absolute(scratch);
  const auto source = dir / "candidate.c";
  const auto output = dir / "bin";
  write_file(source, candidate);
  fs::remove(output);
  const auto& harness_path =
      harness == Harness::kFunctional ? c.manifest.functional_test_path : c.manifest.perf_test_path;
  const auto cmd = expand_template(cfg_.compile_cmd_template,
                                   {{"cc", cfg_.cc},
                                    {"flags", cfg_.flags},
                                    {"inputs", shell_quote(source.string()) + " " + shell_quote(harness_path.string())},
                                    {"output", shell_quote(output.string())}});
  const auto res = run_shell(cmd, dir, dir / "stdout.txt", dir / "stderr.txt",
                             std::chrono::seconds(cfg_.compile_timeout_s));
  CompileResult r;
  r.timed_out = res.timed_out;
  r.diagnostics = combined_tail(dir / "stderr.txt", dir / "stdout.txt", kDiagnosticBytes);
  if (res.timed_out) {
    r.diagnostics = "compile timeout after " + std::to_string(cfg_.compile_timeout_s) + " s\n" + r.diagnostics;
  }
  r.success = !res.timed_out && res.exit_code == 0 && fs::exists(output);
  if (r.success) r.artifact_path = output;
  if (!r.success && r.diagnostics.empty()) {
    r.diagnostics = "compiler exited with status " + std::to_string(res.exit_code) + " and no output";
  }
  return r;
}

TestResult ToolchainExecutor::run_tests(const fs::path& artifact, const fs::path& scratch) {
  TestResult t;
  t.all_passed = true;
  for (int vlen : cfg_.vlens) {
    const auto dir = fs::absolute(scratch) / ("run-vlen" + std::to_string(vlen));
    fs::create_directories(dir);
    const auto cmd = expand_template(
        cfg_.runner_cmd_template,
        {{"runner", cfg_.runner}, {"vlen", std::to_string(vlen)}, {"binary", shell_quote(fs::absolute(artifact).string())}});
    const auto res = run_shell(cmd, dir, dir / "stdout.txt", dir / "stderr.txt", std::chrono::seconds(cfg_.run_timeout_s));
    VlenRun run;
    run.timed_out = res.timed_out;
    run.exit_code = res.exit_code;
    run.passed = !res.timed_out && res.exit_code == 0;
    run.output_tail = combined_tail(dir / "stdout.txt", dir / "stderr.txt", kOutputTailBytes);
    if (res.timed_out) run.output_tail += "timeout after " + std::to_string(cfg_.run_timeout_s) + " s\n";
    t.all_passed = t.all_passed && run.passed;
    t.per_vlen[vlen] = std::move(run);
  }
  return t;
}

std::int64_t ToolchainExecutor::measure(const fs::path& binary, const fs::path& dir) {
  fs::create_directories(dir);
  const auto cmd = expand_template(cfg_.runner_cmd_template, {{"runner", cfg_.runner},
                                                              {"vlen", std::to_string(cfg_.perf_vlen())},
                                                              {"binary", shell_quote(fs::absolute(binary).string())}});
  const auto res = run_shell(cmd, dir, dir / "stdout.txt", dir / "stderr.txt", std::chrono::seconds(cfg_.run_timeout_s));
  if (res.timed_out) throw ExecError("benchmark timeout after " + std::to_string(cfg_.run_timeout_s) + " s");
  if (res.exit_code != 0) throw ExecError("benchmark exited with status " + std::to_string(res.exit_code));
  const auto cost = parse_cost_line(read_all(dir / "stdout.txt"));
  if (cost <= 0) throw ExecError("benchmark reported a zero cost");
  return cost;
}

PerfResult ToolchainExecutor::run_perf(const fs::path& translated, const fs::path& native, const fs::path& scratch) {
  std::vector<std::int64_t> t, n;
  const auto base = fs::absolute(scratch) / "perf-runs";
  // Interleave so slow drift of the host affects both binaries alike.
  for (int i = 0; i < cfg_.perf_runs; ++i) {
    n.push_back(measure(native, base / ("native-" + std::to_string(i + 1))));
    t.push_back(measure(translated, base / ("candidate-" + std::to_string(i + 1))));
  }
  PerfResult p;
  p.runs = cfg_.perf_runs;
  p.native_cost_ns = median_cost(n);
  p.translated_cost_ns = median_cost(t);
  p.speedup = speedup(p.native_cost_ns, p.translated_cost_ns);
  return p;
}

}  // namespace rvvport
