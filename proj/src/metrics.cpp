#include "rvvport/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "rvvport/error.hpp"
#include "rvvport/orchestrator.hpp"

namespace rvvport {

CaseResult case_result(const TaskOutcome& o) {
  return {o.case_id, o.passed, o.attempts_used, o.final_speedup, std::string(to_string(o.status))};
}

int speedup_bucket(const Rational& s) {
  if (s < Rational(1, 2)) return 0;
  if (s < Rational(9, 10)) return 1;
  if (s <= Rational(11, 10)) return 2;
  if (s <= Rational(2)) return 3;
  return 4;
}

Rational pass_rate(int n_passed, int n_total) {
  if (n_total < 1) throw ContractError("pass rate needs at least one outcome");
  if (n_passed < 0 || n_passed > n_total) throw ContractError("passed count outside [0, total]");
  return Rational(100 * n_passed, n_total);
}

Rational pass_rate(const std::vector<CaseResult>& results) {
  const auto passed = std::count_if(results.begin(), results.end(), [](const CaseResult& r) { return r.passed; });
  return pass_rate(static_cast<int>(passed), static_cast<int>(results.size()));
}

Rational efficiency_score(const std::vector<CaseResult>& results, int up_limit, bool include_failed) {
  if (up_limit < 1) throw ContractError("up_limit must be at least 1");
  Rational sum{0};
  for (const auto& r : results) {
    int attempts = r.attempts_used;
    if (!r.passed) {
      if (!include_failed) continue;
      attempts = up_limit;
    }
    if (attempts < 1 || attempts > up_limit) {
      throw ContractError("case " + r.case_id + ": attempts " + std::to_string(attempts) + " outside [1, " +
                          std::to_string(up_limit) + "]");
    }
    sum += Rational(1 + up_limit - attempts, up_limit);
  }
  return sum;
}

MetricsReport compute_metrics(std::vector<CaseResult> results, int up_limit, bool include_failed, std::string label) {
  std::sort(results.begin(), results.end(),
            [](const CaseResult& a, const CaseResult& b) { return a.case_id < b.case_id; });
  MetricsReport m;
  m.label = std::move(label);
  m.up_limit = up_limit;
  m.include_failed = include_failed;
  m.n_total = static_cast<int>(results.size());
  m.pass_rate = pass_rate(results);
  m.efficiency_score = efficiency_score(results, up_limit, include_failed);
  std::int64_t attempts = 0;
  for (const auto& r : results) {
    if (!r.passed) continue;
    ++m.n_passed;
    attempts += r.attempts_used;
    if (r.speedup) {
      m.speedups[r.case_id] = *r.speedup;
      ++m.speedup_buckets[static_cast<std::size_t>(speedup_bucket(*r.speedup))];
    }
  }
  if (m.n_passed > 0) m.avg_attempts = Rational(attempts, m.n_passed);
  m.cases = std::move(results);
  return m;
}

std::string render_text(const MetricsReport& m) {
  std::ostringstream os;
  std::size_t width = 4;
  for (const auto& c : m.cases) width = std::max(width, c.case_id.size());
  os << std::left << std::setw(static_cast<int>(width)) << "case" << "  " << std::setw(7) << "status" << "  "
     << std::setw(8) << "attempts" << "  speedup\n";
  for (const auto& c : m.cases) {
    os << std::setw(static_cast<int>(width)) << c.case_id << "  " << std::setw(7) << c.status << "  "
       << std::setw(8) << (c.passed ? std::to_string(c.attempts_used) : "-") << "  "
       << (c.passed && c.speedup ? format_decimal(*c.speedup, 2) + "x" : "-") << "\n";
  }
  os << "\n";
  const std::string label = m.label.empty() ? "run" : m.label;
  os << std::setw(static_cast<int>(std::max<std::size_t>(label.size(), 5))) << "model"
     << "  pass rate  avg iterations  efficiency score\n";
  os << std::setw(static_cast<int>(std::max<std::size_t>(label.size(), 5))) << label << "  " << std::setw(9)
     << (format_decimal(m.pass_rate, 1) + "%") << "  " << std::setw(14)
     << (m.avg_attempts ? format_decimal(*m.avg_attempts, 1) : "-") << "  " << format_decimal(m.efficiency_score, 1)
     << "\n";
  os << "passed " << m.n_passed << " of " << m.n_total << "; efficiency up_limit " << m.up_limit << ", failed cases "
     << (m.include_failed ? "included" : "excluded") << "\n\n";
  os << "speedup histogram (passing cases with perf data):\n";
  for (std::size_t i = 0; i < kBucketLabels.size(); ++i) {
    os << "  " << std::setw(10) << kBucketLabels[i] << " " << m.speedup_buckets[i] << "\n";
  }
  return os.str();
}

namespace {

nlohmann::json opt_rational(const std::optional<Rational>& r) {
  return r ? nlohmann::json(to_string(*r)) : nlohmann::json(nullptr);
}

std::optional<Rational> read_opt_rational(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return parse_rational(j.get<std::string>());
}

}  // namespace

nlohmann::json metrics_to_json(const MetricsReport& m) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : m.cases) {
    cases.push_back({{"case_id", c.case_id},
                     {"status", c.status},
                     {"passed", c.passed},
                     {"attempts_used", c.attempts_used},
                     {"speedup", opt_rational(c.speedup)}});
  }
  nlohmann::json speedups = nlohmann::json::object();
  for (const auto& [id, s] : m.speedups) speedups[id] = to_string(s);
  nlohmann::json buckets = nlohmann::json::object();
  for (std::size_t i = 0; i < kBucketLabels.size(); ++i) buckets[kBucketLabels[i]] = m.speedup_buckets[i];
  return {{"format", "rvvport-metrics"},
          {"version", 1},
          {"label", m.label},
          {"n_total", m.n_total},
          {"n_passed", m.n_passed},
          {"pass_rate", to_string(m.pass_rate)},
          {"pass_rate_display", format_decimal(m.pass_rate, 1)},
          {"efficiency_score", to_string(m.efficiency_score)},
          {"efficiency_score_display", format_decimal(m.efficiency_score, 1)},
          {"avg_attempts", opt_rational(m.avg_attempts)},
          {"up_limit", m.up_limit},
          {"include_failed", m.include_failed},
          {"speedups", speedups},
          {"speedup_buckets", buckets},
          {"cases", cases}};
}

MetricsReport metrics_from_json(const nlohmann::json& j) {
  try {
    if (j.value("format", "") != "rvvport-metrics") throw Error("not a metrics file");
    MetricsReport m;
    m.label = j.at("label").get<std::string>();
    m.n_total = j.at("n_total").get<int>();
    m.n_passed = j.at("n_passed").get<int>();
    m.pass_rate = parse_rational(j.at("pass_rate").get<std::string>());
    m.efficiency_score = parse_rational(j.at("efficiency_score").get<std::string>());
    m.avg_attempts = read_opt_rational(j.at("avg_attempts"));
    m.up_limit = j.at("up_limit").get<int>();
    m.include_failed = j.at("include_failed").get<bool>();
    for (const auto& [id, s] : j.at("speedups").items()) m.speedups[id] = parse_rational(s.get<std::string>());
    for (std::size_t i = 0; i < kBucketLabels.size(); ++i) {
      m.speedup_buckets[i] = j.at("speedup_buckets").at(kBucketLabels[i]).get<int>();
    }
    for (const auto& c : j.at("cases")) {
      m.cases.push_back({c.at("case_id").get<std::string>(), c.at("passed").get<bool>(),
                         c.at("attempts_used").get<int>(), read_opt_rational(c.at("speedup")),
                         c.at("status").get<std::string>()});
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed metrics file: ") + e.what());
  }
}

}  // namespace rvvport
