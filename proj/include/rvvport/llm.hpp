#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rvvport {

enum class Role { kSystem, kUser, kAssistant };

std::string_view to_string(Role role);

struct ChatMessage {
  Role role = Role::kUser;
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct CompletionOptions {
  double temperature = 0.2;
  int max_tokens = 8192;
};

/// Who is asking: lets scripted clients keep one response sequence per case
/// no matter how tasks interleave.
struct CallContext {
  std::string case_id;
  int call_no = 1;      // 1-based within the case
  std::string purpose;  // translate, repair_compile, repair_test, optimize
};

class LlmClient {
 public:
  virtual ~LlmClient() = default;
  /// Returns the assistant's reply text; throws LlmError.
  virtual std::string complete(const CallContext& ctx, const std::vector<ChatMessage>& messages,
                               const CompletionOptions& options) = 0;
};

/// Scripted responses. The file is JSON:
///   {"format": "rvvport-replay", "version": 1,
///    "cases": {"<case id>": ["reply 1", {"purpose": "optimize", "response": "reply 2"}, ...]}}
/// Call n of a case returns entry n; an entry carrying a purpose must match
/// the call's purpose. Running past the end throws LlmError.
class ReplayClient : public LlmClient {
 public:
  struct Entry {
    std::optional<std::string> purpose;
    std::string response;
  };

  explicit ReplayClient(std::map<std::string, std::vector<Entry>> cases);
  ReplayClient(ReplayClient&& other) noexcept : cases_(std::move(other.cases_)), served_(std::move(other.served_)) {}
  static ReplayClient from_file(const std::filesystem::path& file);
  static ReplayClient from_json(const nlohmann::json& j);

  std::string complete(const CallContext& ctx, const std::vector<ChatMessage>& messages,
                       const CompletionOptions& options) override;

  /// Calls served so far for a case.
  int served(const std::string& case_id) const;
  bool has_case(const std::string& case_id) const { return cases_.count(case_id) != 0; }

 private:
  std::map<std::string, std::vector<Entry>> cases_;
  mutable std::mutex mu_;
  std::map<std::string, int> served_;
};

nlohmann::json replay_to_json(const std::map<std::string, std::vector<ReplayClient::Entry>>& cases);

/// Chat-completion client for OpenAI-style HTTP endpoints
/// (POST {"model", "messages", "temperature", "max_tokens"} and read
/// choices[0].message.content). The API key comes from an environment
/// variable only.
class RemoteClient : public LlmClient {
 public:
  struct Options {
    std::string endpoint;  // e.g. https://api.example.com/v1/chat/completions
    std::string model;
    std::string api_key_env = "RVVPORT_API_KEY";
    std::chrono::seconds timeout{120};
    int max_attempts = 3;
    std::chrono::milliseconds initial_backoff{1000};
    std::function<void(std::chrono::milliseconds)> sleep;  // defaults to std::this_thread::sleep_for
  };

  explicit RemoteClient(Options options);

  std::string complete(const CallContext& ctx, const std::vector<ChatMessage>& messages,
                       const CompletionOptions& options) override;

  static nlohmann::json request_body(const std::string& model, const std::vector<ChatMessage>& messages,
                                     const CompletionOptions& options);

 private:
  Options opt_;
  std::string base_;
  std::string path_;
};

}  // namespace rvvport
