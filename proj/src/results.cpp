#include "rvvport/results.hpp"

#include <sstream>

#include "rvvport/error.hpp"

namespace rvvport {

std::string TestResult::report() const {
  std::ostringstream os;
  if (all_passed) {
    os << "all functional tests passed\n";
    return os.str();
  }
  os << "functional tests failed at";
  for (const auto& [vlen, run] : per_vlen) {
    if (!run.passed) os << " VLEN=" << vlen;
  }
  os << "\n";
  for (const auto& [vlen, run] : per_vlen) {
    os << "VLEN=" << vlen << ": ";
    if (run.passed) {
      os << "passed\n";
      continue;
    }
    if (run.timed_out) {
      os << "timeout\n";
    } else {
      os << "failed with exit code " << run.exit_code << "\n";
    }
    if (!run.output_tail.empty()) {
      os << run.output_tail;
      if (run.output_tail.back() != '\n') os << "\n";
    }
  }
  return os.str();
}

Rational speedup(std::int64_t native_cost_ns, std::int64_t translated_cost_ns) {
  if (native_cost_ns <= 0 || translated_cost_ns <= 0) {
    throw ContractError("speedup needs positive costs, got native=" + std::to_string(native_cost_ns) +
                        " translated=" + std::to_string(translated_cost_ns));
  }
  return Rational(native_cost_ns, translated_cost_ns);
}

nlohmann::json to_json(const CompileResult& r) {
  return {{"success", r.success}, {"timed_out", r.timed_out}, {"diagnostics", r.diagnostics}};
}

nlohmann::json to_json(const TestResult& r) {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [vlen, run] : r.per_vlen) {
    per[std::to_string(vlen)] = {{"passed", run.passed},
                                 {"exit_code", run.exit_code},
                                 {"timed_out", run.timed_out},
                                 {"output_tail", run.output_tail}};
  }
  return {{"all_passed", r.all_passed}, {"per_vlen", per}};
}

nlohmann::json to_json(const PerfResult& r) {
  return {{"translated_cost_ns", r.translated_cost_ns},
          {"native_cost_ns", r.native_cost_ns},
          {"speedup", to_string(r.speedup)},
          {"runs", r.runs}};
}

PerfResult perf_from_json(const nlohmann::json& j) {
  PerfResult p;
  p.translated_cost_ns = j.at("translated_cost_ns").get<std::int64_t>();
  p.native_cost_ns = j.at("native_cost_ns").get<std::int64_t>();
  p.speedup = parse_rational(j.at("speedup").get<std::string>());
  p.runs = j.at("runs").get<int>();
  return p;
}

}  // namespace rvvport
