#include <fstream>

#include "rvvport/error.hpp"
#include "rvvport/llm.hpp"

namespace rvvport {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kSystem: return "system";
    case Role::kUser: return "user";
    case Role::kAssistant: return "assistant";
  }
  return "user";
}

ReplayClient::ReplayClient(std::map<std::string, std::vector<Entry>> cases) : cases_(std::move(cases)) {}

ReplayClient ReplayClient::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", "") != "rvvport-replay") {
    throw ConfigError("replay file: missing \"format\": \"rvvport-replay\"");
  }
  if (j.value("version", 0) != 1) throw ConfigError("replay file: unsupported version");
  if (!j.contains("cases") || !j["cases"].is_object()) throw ConfigError("replay file: \"cases\" must be an object");
  std::map<std::string, std::vector<Entry>> cases;
  for (const auto& [id, list] : j["cases"].items()) {
    if (!list.is_array()) throw ConfigError("replay file: case " + id + " must map to a list");
    auto& out = cases[id];
    for (const auto& item : list) {
      if (item.is_string()) {
        out.push_back({std::nullopt, item.get<std::string>()});
      } else if (item.is_object() && item.contains("response") && item["response"].is_string()) {
        Entry e{std::nullopt, item["response"].get<std::string>()};
        if (item.contains("purpose")) e.purpose = item["purpose"].get<std::string>();
        out.push_back(std::move(e));
      } else {
        throw ConfigError("replay file: case " + id + " has an entry that is neither a string nor {response}");
      }
    }
  }
  return ReplayClient(std::move(cases));
}

ReplayClient ReplayClient::from_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read replay file " + file.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("replay file " + file.string() + ": " + e.what());
  }
}

std::string ReplayClient::complete(const CallContext& ctx, const std::vector<ChatMessage>& messages,
                                   const CompletionOptions& options) {
  (void)messages;
  (void)options;
  std::lock_guard lock(mu_);
  auto it = cases_.find(ctx.case_id);
  if (it == cases_.end()) throw LlmError("replay has no responses for case " + ctx.case_id);
  const int n = served_[ctx.case_id] + 1;  // only served calls count
  if (n != ctx.call_no) {
    throw LlmError("replay for case " + ctx.case_id + ": call " + std::to_string(ctx.call_no) +
                   " requested out of order (expected " + std::to_string(n) + ")");
  }
  if (n > static_cast<int>(it->second.size())) {
    throw LlmError("replay exhausted for case " + ctx.case_id + " at call " + std::to_string(n));
  }
  const auto& entry = it->second[n - 1];
  if (entry.purpose && *entry.purpose != ctx.purpose) {
    throw LlmError("replay for case " + ctx.case_id + ": call " + std::to_string(n) + " scripted for " +
                   *entry.purpose + " but requested for " + ctx.purpose);
  }
  served_[ctx.case_id] = n;
  return entry.response;
}

int ReplayClient::served(const std::string& case_id) const {
  std::lock_guard lock(mu_);
  auto it = served_.find(case_id);
  return it == served_.end() ? 0 : it->second;
}

nlohmann::json replay_to_json(const std::map<std::string, std::vector<ReplayClient::Entry>>& cases) {
  nlohmann::json out = {{"format", "rvvport-replay"}, {"version", 1}, {"cases", nlohmann::json::object()}};
  for (const auto& [id, list] : cases) {
    auto& arr = out["cases"][id] = nlohmann::json::array();
    for (const auto& e : list) {
      if (e.purpose) {
        arr.push_back({{"purpose", *e.purpose}, {"response", e.response}});
      } else {
        arr.push_back(e.response);
      }
    }
  }
  return out;
}

}  // namespace rvvport
