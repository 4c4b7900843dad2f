#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rvvport/rational.hpp"

namespace rvvport {

struct TaskOutcome;

/// What the metrics need from one task outcome.
struct CaseResult {
  std::string case_id;
  bool passed = false;
  int attempts_used = 0;
  std::optional<Rational> speedup;
  std::string status;  // passed, failed, error

  friend bool operator==(const CaseResult&, const CaseResult&) = default;
};

CaseResult case_result(const TaskOutcome& outcome);

/// Speedup bands: <0.5, [0.5,0.9), [0.9,1.1], (1.1,2.0], >2.0.
inline constexpr std::array<const char*, 5> kBucketLabels{"<0.5", "[0.5,0.9)", "[0.9,1.1]", "(1.1,2.0]", ">2.0"};
int speedup_bucket(const Rational& speedup);

/// 100 * passed / total, exact. Throws ContractError for total < 1.
Rational pass_rate(int n_passed, int n_total);
Rational pass_rate(const std::vector<CaseResult>& results);

/// Sum over included cases of (1 + up_limit - attempts) / up_limit. Passing
/// cases use their attempts; failed cases are skipped, or counted with
/// attempts = up_limit when include_failed. Throws ContractError when a
/// passing case used attempts outside [1, up_limit].
Rational efficiency_score(const std::vector<CaseResult>& results, int up_limit = 10, bool include_failed = false);

struct MetricsReport {
  std::string label;  // model name or run label
  int n_total = 0;
  int n_passed = 0;
  Rational pass_rate{0};
  Rational efficiency_score{0};
  std::optional<Rational> avg_attempts;  // over passing cases
  std::map<std::string, Rational> speedups;
  std::array<int, 5> speedup_buckets{};
  int up_limit = 10;
  bool include_failed = false;
  std::vector<CaseResult> cases;  // sorted by case id

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

MetricsReport compute_metrics(std::vector<CaseResult> results, int up_limit = 10, bool include_failed = false,
                              std::string label = {});

/// Table with one row per case, a summary line (pass rate, average
/// iterations, efficiency score) and the speedup histogram.
std::string render_text(const MetricsReport& report);

/// Stable machine format; rationals as "num/den" strings.
nlohmann::json metrics_to_json(const MetricsReport& report);
MetricsReport metrics_from_json(const nlohmann::json& j);

}  // namespace rvvport
