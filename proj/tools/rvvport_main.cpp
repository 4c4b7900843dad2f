// rvvport command-line tool: translate, analyze, report.

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <stop_token>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rvvport/error.hpp"
#include "rvvport/liveness.hpp"
#include "rvvport/pipeline.hpp"
#include "rvvport/pressure.hpp"
#include "rvvport/rvv_front.hpp"

namespace fs = std::filesystem;
using namespace rvvport;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;
constexpr int kExitInterrupted = 130;

volatile std::sig_atomic_t g_interrupted = 0;

extern "C" void on_signal(int) { g_interrupted = 1; }

bool is_bool_key(const std::string& key) {
  return key == "include-failed" || key == "no-exec" || key == "keep-scratch";
}

const char* key_help(const std::string& key) {
  static const std::map<std::string, const char*> help = {
      {"corpus", "corpus directory"},
      {"cases", "comma-separated case ids (default: all)"},
      {"model", "model name sent to the endpoint and used as report label"},
      {"endpoint", "chat-completion URL (key from $RVVPORT_API_KEY)"},
      {"replay", "scripted responses file instead of an endpoint"},
      {"temperature", "sampling temperature"},
      {"max-tokens", "completion token limit"},
      {"translate-max", "translation attempt budget"},
      {"optimize-max", "optimization attempt budget"},
      {"cc", "RISC-V C compiler"},
      {"flags", "compiler flags"},
      {"compile-template", "compile command template"},
      {"runner", "emulator executable"},
      {"runner-template", "run command template"},
      {"vlens", "comma-separated VLEN values for functional tests"},
      {"compile-timeout", "compile timeout in seconds"},
      {"run-timeout", "per-run timeout in seconds"},
      {"perf-runs", "benchmark repetitions (median taken)"},
      {"pressure-mode", "paper_literal or physical"},
      {"parallel", "cases run concurrently"},
      {"out", "output directory"},
      {"include-failed", "count failed cases in the efficiency score"},
      {"no-exec", "use mock executors instead of the toolchain"},
      {"keep-scratch", "keep build directories after each case"},
      {"feedback-bytes", "byte budget for compiler/test feedback in prompts"},
  };
  auto it = help.find(key);
  return it == help.end() ? "" : it->second;
}

struct TranslateArgs {
  std::map<std::string, std::string> values;
  std::map<std::string, int> on, off;
  std::string config_file;
  bool quiet = false;
};

int cmd_translate(const TranslateArgs& args) {
  KeyValues flags;
  for (const auto& [k, v] : args.values) {
    if (!v.empty()) flags[k] = v;
  }
  for (const auto& key : config_keys()) {
    if (!is_bool_key(key)) continue;
    const int on = args.on.at(key), off = args.off.at(key);
    if (on && off) throw ConfigError("--" + key + " and --no-" + key + " are mutually exclusive");
    if (on) flags[key] = "true";
    if (off) flags[key] = "false";
  }

  KeyValues file_values;
  if (!args.config_file.empty()) {
    if (!fs::exists(args.config_file)) throw ConfigError("config file not found: " + args.config_file);
    file_values = read_key_values(args.config_file);
  } else {
    const fs::path corpus = flags.count("corpus") ? fs::path(flags["corpus"]) : fs::path("corpus");
    const fs::path implicit = corpus / "rvvport.conf";
    if (fs::exists(implicit)) file_values = read_key_values(implicit);
  }
  RunConfig config = resolve_config(file_values, flags);
  config.validate();

  auto llm = make_llm_client(config);
  auto exec = make_executor(config);

  std::stop_source stop;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::jthread watcher([&stop](std::stop_token done) {
    while (!done.stop_requested()) {
      if (g_interrupted) {
        std::cerr << "interrupted; finishing running steps\n";
        stop.request_stop();
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
  });

  auto progress = [&](const std::string& line) {
    if (!args.quiet) std::cerr << line << "\n";
  };
  RunSummary summary = run_pipeline(config, *llm, *exec, stop.get_token(), progress);
  watcher.request_stop();
  for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << render_text(summary.metrics);
  std::cout << "outcomes written to " << (config.out_dir / "outcomes").string() << "\n";
  return stop.stop_requested() ? kExitInterrupted : kExitOk;
}

struct AnalyzeArgs {
  std::string file;
  std::string function;
  std::string mode = "paper_literal";
  bool dump_ir = false;
  bool print = false;
  bool json = false;
};

int cmd_analyze(const AnalyzeArgs& args) {
  const auto mode = parse_footprint_mode(args.mode);
  if (!mode) throw ConfigError("unknown footprint mode '" + args.mode + "' (paper_literal or physical)");
  std::ifstream in(args.file, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + args.file);
  const std::string source((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  FunctionIr ir;
  try {
    ir = parse_function_named(source, args.function);
  } catch (const ParseError& e) {
    std::cerr << args.file << ":" << (e.line() > 0 ? std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " : " ")
              << "error: " << e.bare_message() << "\n";
    return kExitUsage;
  } catch (const AnalysisError& e) {
    std::cerr << args.file << ": error: " << e.what() << "\n";
    return kExitUsage;
  }
  for (const auto& w : ir.warnings) std::cerr << args.file << ": warning: " << w << "\n";

  if (args.dump_ir) std::cout << dump_ir(ir) << "\n";
  if (args.print) std::cout << print_function(ir) << "\n";
  const PressureReport report = analyze_function(ir, *mode);
  if (args.json) {
    std::cout << pressure_to_json(report).dump(2) << "\n";
  } else {
    std::cout << render_pressure(report);
  }
  return kExitOk;
}

struct ReportArgs {
  std::string dir;
  std::optional<int> up_limit;
  int include_failed = 0;
  int exclude_failed = 0;
  std::string label;
  bool json = false;
};

int cmd_report(const ReportArgs& args) {
  const LoadedOutcomes loaded = load_outcomes(args.dir);
  for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << "\n";

  int up_limit = 10;
  bool include_failed = false;
  std::string label = "run";
  const fs::path run_file = fs::path(args.dir) / "run.json";
  if (fs::exists(run_file)) {
    try {
      std::ifstream in(run_file);
      const auto run = nlohmann::json::parse(in);
      label = run.value("label", label);
      const auto& s = run.at("settings");
      up_limit = std::stoi(s.at("translate-max").get<std::string>());
      include_failed = s.at("include-failed").get<std::string>() == "true";
    } catch (const std::exception& e) {
      std::cerr << "warning: ignoring unreadable run.json: " << e.what() << "\n";
    }
  }
  if (args.up_limit) up_limit = *args.up_limit;
  if (args.include_failed && args.exclude_failed) throw ConfigError("--include-failed and --no-include-failed are mutually exclusive");
  if (args.include_failed) include_failed = true;
  if (args.exclude_failed) include_failed = false;
  if (!args.label.empty()) label = args.label;

  std::vector<CaseResult> results;
  for (const auto& o : loaded.outcomes) results.push_back(case_result(o));
  const MetricsReport report = compute_metrics(results, up_limit, include_failed, label);
  if (args.json) {
    std::cout << metrics_to_json(report).dump(2) << "\n";
  } else {
    std::cout << render_text(report);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Port Arm Neon kernels to RISC-V vector intrinsics with an LLM in the loop"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rvvport 0.3.0");

  TranslateArgs targs;
  auto* translate = app.add_subcommand("translate", "translate corpus cases and write outcomes and metrics");
  translate->add_option("--config", targs.config_file, "config file (default: <corpus>/rvvport.conf when present)");
  translate->add_flag("-q,--quiet", targs.quiet, "no per-case progress lines");
  for (const auto& key : config_keys()) {
    if (is_bool_key(key)) {
      targs.on[key] = 0;
      targs.off[key] = 0;
      translate->add_flag("--" + key, targs.on[key], key_help(key));
      translate->add_flag("--no-" + key, targs.off[key], std::string("do not ") + key_help(key));
    } else {
      targs.values[key];
      translate->add_option("--" + key, targs.values[key], key_help(key));
    }
  }

  AnalyzeArgs aargs;
  auto* analyze = app.add_subcommand("analyze", "report vector register pressure of an RVV C function");
  analyze->add_option("file", aargs.file, "RVV intrinsic C source")->required();
  analyze->add_option("-f,--function", aargs.function, "function to analyze (default: the only one)");
  analyze->add_option("--mode", aargs.mode, "footprint mode: paper_literal or physical");
  analyze->add_flag("--dump-ir", aargs.dump_ir, "print blocks, edges and per-statement USE/DEF first");
  analyze->add_flag("--print", aargs.print, "print the normalized function first");
  analyze->add_flag("--json", aargs.json, "emit the report as JSON");

  ReportArgs rargs;
  auto* report = app.add_subcommand("report", "recompute metrics from saved outcomes");
  report->add_option("dir", rargs.dir, "run output directory or its outcomes/ subdirectory")->required();
  report->add_option("--up-limit", rargs.up_limit, "translation budget used in the efficiency score");
  report->add_flag("--include-failed", rargs.include_failed, "count failed cases in the efficiency score");
  report->add_flag("--no-include-failed", rargs.exclude_failed, "exclude failed cases from the efficiency score");
  report->add_option("--label", rargs.label, "label for the summary line");
  report->add_flag("--json", rargs.json, "emit the metrics as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*translate) return cmd_translate(targs);
    if (*analyze) return cmd_analyze(aargs);
    if (*report) return cmd_report(rargs);
  } catch (const Error& e) {
    std::cerr << "rvvport: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "rvvport: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
