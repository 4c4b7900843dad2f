#include <httplib.h>

#include <cstdlib>
#include <regex>
#include <thread>

#include "rvvport/error.hpp"
#include "rvvport/llm.hpp"

namespace rvvport {

RemoteClient::RemoteClient(Options options) : opt_(std::move(options)) {
  static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(opt_.endpoint, m, url)) throw ConfigError("endpoint is not an http(s) URL: " + opt_.endpoint);
  base_ = m[1].str();
  path_ = m[2].matched ? m[2].str() : "/v1/chat/completions";
  if (opt_.model.empty()) throw ConfigError("remote client needs a model name");
  if (opt_.max_attempts < 1) throw ConfigError("remote client needs at least one attempt");
  if (!opt_.sleep) opt_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

nlohmann::json RemoteClient::request_body(const std::string& model, const std::vector<ChatMessage>& messages,
                                          const CompletionOptions& options) {
  nlohmann::json body = {{"model", model},
                         {"temperature", options.temperature},
                         {"max_tokens", options.max_tokens},
                         {"messages", nlohmann::json::array()}};
  for (const auto& m : messages) body["messages"].push_back({{"role", to_string(m.role)}, {"content", m.content}});
  return body;
}

std::string RemoteClient::complete(const CallContext& ctx, const std::vector<ChatMessage>& messages,
                                   const CompletionOptions& options) {
  (void)ctx;
  httplib::Client client(base_);
  const auto secs = static_cast<time_t>(opt_.timeout.count());
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  client.set_write_timeout(secs, 0);

  httplib::Headers headers;
  if (const char* key = std::getenv(opt_.api_key_env.c_str()); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  const std::string body = request_body(opt_.model, messages, options).dump();

  std::string last_error;
  auto backoff = opt_.initial_backoff;
  for (int attempt = 1; attempt <= opt_.max_attempts; ++attempt) {
    if (attempt > 1) {
      opt_.sleep(backoff);
      backoff *= 2;
    }
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw LlmError("endpoint returned HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 512));
    }
    try {
      const auto j = nlohmann::json::parse(res->body);
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw LlmError(std::string("malformed completion response: ") + e.what());
    }
  }
  throw LlmError("endpoint failed after " + std::to_string(opt_.max_attempts) + " attempts: " + last_error);
}

}  // namespace rvvport
