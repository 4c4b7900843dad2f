#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include <httplib.h>

#include "rvvport/error.hpp"
#include "rvvport/llm.hpp"

using namespace rvvport;

namespace {

const std::vector<ChatMessage> kMessages{{Role::kSystem, "sys"}, {Role::kUser, "translate"}};

}  // namespace

TEST(Replay, ServesPerCaseInOrder) {
  ReplayClient r({{"a", {{std::nullopt, "a1"}, {"optimize", "a2"}}}, {"b", {{std::nullopt, "b1"}}}});
  EXPECT_EQ(r.complete({"b", 1, "translate"}, kMessages, {}), "b1");
  EXPECT_EQ(r.complete({"a", 1, "translate"}, kMessages, {}), "a1");
  EXPECT_EQ(r.complete({"a", 2, "optimize"}, kMessages, {}), "a2");
  EXPECT_EQ(r.served("a"), 2);
  EXPECT_THROW(r.complete({"a", 3, "optimize"}, kMessages, {}), LlmError);
  EXPECT_THROW(r.complete({"zzz", 1, "translate"}, kMessages, {}), LlmError);
}

TEST(Replay, PurposeMismatchAndOrder) {
  ReplayClient r({{"a", {{"translate", "x"}, {"repair_compile", "y"}}}});
  EXPECT_THROW(r.complete({"a", 2, "repair_compile"}, kMessages, {}), LlmError);
  EXPECT_EQ(r.complete({"a", 1, "translate"}, kMessages, {}), "x");
  EXPECT_THROW(r.complete({"a", 2, "repair_test"}, kMessages, {}), LlmError);
}

TEST(Replay, JsonRoundTripAndValidation) {
  std::map<std::string, std::vector<ReplayClient::Entry>> cases{{"a", {{std::nullopt, "x"}, {"optimize", "y"}}}};
  auto j = replay_to_json(cases);
  auto r = ReplayClient::from_json(j);
  EXPECT_EQ(r.complete({"a", 1, "translate"}, kMessages, {}), "x");
  EXPECT_THROW(ReplayClient::from_json(nlohmann::json{{"format", "other"}}), ConfigError);
  j["version"] = 2;
  EXPECT_THROW(ReplayClient::from_json(j), ConfigError);
  EXPECT_THROW(ReplayClient::from_file("/nonexistent/replay.json"), ConfigError);
}

TEST(Remote, RequestBodyShape) {
  CompletionOptions o;
  const auto body = RemoteClient::request_body("m", kMessages, o);
  EXPECT_EQ(body["model"], "m");
  EXPECT_DOUBLE_EQ(body["temperature"].get<double>(), 0.2);
  EXPECT_EQ(body["messages"][0]["role"], "system");
  EXPECT_EQ(body["messages"][1]["content"], "translate");
}

class RemoteServer : public ::testing::Test {
 protected:
  void SetUp() override {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    ::setenv("RVVPORT_TEST_KEY", "sekrit", 1);
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  RemoteClient client(int attempts = 3) {
    RemoteClient::Options o;
    o.endpoint = "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
    o.model = "test-model";
    o.api_key_env = "RVVPORT_TEST_KEY";
    o.max_attempts = attempts;
    o.timeout = std::chrono::seconds(5);
    o.sleep = [this](std::chrono::milliseconds d) { sleeps_.push_back(d); };
    return RemoteClient(o);
  }
  static std::string reply(const std::string& content) {
    return nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}.dump();
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::vector<std::chrono::milliseconds> sleeps_;
};

TEST_F(RemoteServer, SendsKeyAndReadsContent) {
  std::string auth, model;
  server_.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    auth = req.get_header_value("Authorization");
    model = nlohmann::json::parse(req.body)["model"];
    res.set_content(reply("```c\nint x;\n```"), "application/json");
  });
  EXPECT_EQ(client().complete({"a", 1, "translate"}, kMessages, {}), "```c\nint x;\n```");
  EXPECT_EQ(auth, "Bearer sekrit");
  EXPECT_EQ(model, "test-model");
}

TEST_F(RemoteServer, RetriesRateLimitsWithBackoff) {
  std::atomic<int> calls{0};
  server_.Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    if (++calls < 3) {
      res.status = 429;
      return;
    }
    res.set_content(reply("ok"), "application/json");
  });
  EXPECT_EQ(client().complete({"a", 1, "translate"}, kMessages, {}), "ok");
  EXPECT_EQ(calls, 3);
  ASSERT_EQ(sleeps_.size(), 2u);
  EXPECT_LT(sleeps_[0], sleeps_[1]);
}

TEST_F(RemoteServer, GivesUpAfterMaxAttempts) {
  std::atomic<int> calls{0};
  server_.Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 503;
  });
  EXPECT_THROW(client(3).complete({"a", 1, "translate"}, kMessages, {}), LlmError);
  EXPECT_EQ(calls, 3);
}

TEST_F(RemoteServer, ClientErrorsAreNotRetried) {
  std::atomic<int> calls{0};
  server_.Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 401;
  });
  EXPECT_THROW(client().complete({"a", 1, "translate"}, kMessages, {}), LlmError);
  EXPECT_EQ(calls, 1);
}

TEST_F(RemoteServer, MalformedBodyIsAnError) {
  server_.Post("/v1/chat/completions",
               [&](const httplib::Request&, httplib::Response& res) { res.set_content("{}", "application/json"); });
  EXPECT_THROW(client(1).complete({"a", 1, "translate"}, kMessages, {}), LlmError);
}
