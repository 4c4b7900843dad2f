#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rvvport/corpus.hpp"
#include "rvvport/results.hpp"

namespace rvvport {

inline constexpr std::size_t kOutputTailBytes = 4096;

/// Command templates use {cc} {flags} {inputs} {output} for compilation and
/// {runner} {vlen} {binary} for execution. {inputs}, {output} and {binary}
/// are shell-quoted on substitution; the rest are inserted verbatim.
struct ToolchainConfig {
  std::string cc = "riscv64-linux-gnu-gcc";
  std::string flags = "-march=rv64gcv -O3";
  std::string compile_cmd_template = "{cc} {flags} -static -o {output} {inputs} -lm";
  std::string runner = "qemu-riscv64";
  std::string runner_cmd_template = "{runner} -cpu rv64,v=true,vlen={vlen} {binary}";
  std::vector<int> vlens{128, 256};
  int compile_timeout_s = 120;
  int run_timeout_s = 60;
  int perf_runs = 5;

  /// Throws ConfigError (bad VLEN, empty list, nonpositive timeout, template
  /// missing a required placeholder).
  void validate() const;
  int perf_vlen() const;  // largest configured VLEN
};

enum class Harness { kFunctional, kPerf };

class Executor {
 public:
  virtual ~Executor() = default;

  /// Checks that the external tools exist; throws ConfigError naming the
  /// missing one.
  virtual void probe() = 0;

  /// Writes the candidate into `scratch` and builds it with the chosen
  /// harness. Never touches the case directory.
  virtual CompileResult compile(const std::string& candidate, const ValidatedCase& c, Harness harness,
                                const std::filesystem::path& scratch) = 0;

  /// One run per configured VLEN; exit status 0 passes.
  virtual TestResult run_tests(const std::filesystem::path& artifact, const std::filesystem::path& scratch) = 0;

  /// Medians over `perf_runs` runs of each binary at the largest VLEN.
  /// Throws ExecError when a run fails or prints no cost line.
  virtual PerfResult run_perf(const std::filesystem::path& translated, const std::filesystem::path& native,
                              const std::filesystem::path& scratch) = 0;

  virtual const ToolchainConfig& config() const = 0;
};

/// Runs the configured cross-compiler and emulator.
class ToolchainExecutor : public Executor {
 public:
  explicit ToolchainExecutor(ToolchainConfig config);

  void probe() override;
  CompileResult compile(const std::string& candidate, const ValidatedCase& c, Harness harness,
                        const std::filesystem::path& scratch) override;
  TestResult run_tests(const std::filesystem::path& artifact, const std::filesystem::path& scratch) override;
  PerfResult run_perf(const std::filesystem::path& translated, const std::filesystem::path& native,
                      const std::filesystem::path& scratch) override;
  const ToolchainConfig& config() const override { return cfg_; }

 private:
  std::int64_t measure(const std::filesystem::path& binary, const std::filesystem::path& dir);

  ToolchainConfig cfg_;
};

/// Executes nothing. Behaviour is scripted by directives in the candidate
/// text, one per line anywhere (normally in a comment):
///   @mock compile-error: <diagnostic text>
///   @mock test-fail: <vlen>[,<vlen>...]
///   @mock timeout
///   @mock cost-ns: <integer>        (default 100000)
///   @mock perf-error
/// The native reference's cost comes from `@mock cost-ns` in its own text.
/// Candidates without directives compile and pass.
class MockExecutor : public Executor {
 public:
  explicit MockExecutor(ToolchainConfig config = {});

  void probe() override {}
  CompileResult compile(const std::string& candidate, const ValidatedCase& c, Harness harness,
                        const std::filesystem::path& scratch) override;
  TestResult run_tests(const std::filesystem::path& artifact, const std::filesystem::path& scratch) override;
  PerfResult run_perf(const std::filesystem::path& translated, const std::filesystem::path& native,
                      const std::filesystem::path& scratch) override;
  const ToolchainConfig& config() const override { return cfg_; }

  static constexpr std::int64_t kDefaultCostNs = 100000;

 private:
  ToolchainConfig cfg_;
};

/// Median of the samples; the lower middle element for even counts.
std::int64_t median_cost(std::vector<std::int64_t> samples);

/// The final non-empty line as nanoseconds; throws ExecError unless it is
/// all digits.
std::int64_t parse_cost_line(const std::string& stdout_text);

}  // namespace rvvport
