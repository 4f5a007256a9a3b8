// Copyright 2026 The cohortq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include "cohortq/llm/config.hpp"
#include "cohortq/llm/provider.hpp"
#include "cohortq/logging.hpp"
#include "cohortq/pipeline.hpp"
#include "cohortq/transcript_json.hpp"
#include "httplib.h"
#include "json.hpp"
#include "test_util.hpp"

using namespace cohortq;
using namespace cohortq::llm;

namespace {

// Local chat-completions endpoint with a programmable handler.
class StubServer {
 public:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  explicit StubServer(Handler handler) : handler_(std::move(handler)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      {
        std::lock_guard lock(mutex_);
        requests_.push_back(req);
      }
      handler_(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }
  std::vector<httplib::Request> requests() {
    std::lock_guard lock(mutex_);
    return requests_;
  }

 private:
  Handler handler_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::mutex mutex_;
  std::vector<httplib::Request> requests_;
};

std::string completion(const std::string& content) {
  nlohmann::json body = {{"choices", {{{"index", 0}, {"message", {{"role", "assistant"}, {"content", content}}}}}}};
  return body.dump();
}

ProviderConfig config_for(const StubServer& s) {
  ProviderConfig c;
  c.endpoint_url = s.url();
  c.api_key_env_var = "COHORTQ_TEST_API_KEY";
  c.timeout_s = 2;
  setenv("COHORTQ_TEST_API_KEY", "sk-test-123", 0);
  return c;
}

Conversation simple_conversation() {
  Conversation c(make_message(Role::System, "sys"));
  c.append(make_message(Role::User, "How many collections are hosted?"));
  return c;
}

}  // namespace

TEST(HttpProvider, SendsChatRequestAndParsesReply) {
  setenv("COHORTQ_TEST_API_KEY", "sk-test-123", 1);
  StubServer stub([](const httplib::Request&, httplib::Response& res) {
    res.set_content(completion("```sql\nSELECT 1\n```"), "application/json");
  });
  HttpProvider p(config_for(stub));
  auto reply = generate_completion(p, simple_conversation());
  EXPECT_EQ(reply.role, Role::Assistant);
  EXPECT_EQ(reply.content, "```sql\nSELECT 1\n```");
  auto reqs = stub.requests();
  ASSERT_EQ(reqs.size(), 1u);
  EXPECT_EQ(reqs[0].get_header_value("Authorization"), "Bearer sk-test-123");
  auto body = nlohmann::json::parse(reqs[0].body);
  EXPECT_EQ(body.at("model"), "gpt-3.5-turbo");
  EXPECT_EQ(body.at("temperature"), 0.0);
  EXPECT_EQ(body.at("max_tokens"), 512);
  ASSERT_EQ(body.at("messages").size(), 2u);
  EXPECT_EQ(body.at("messages")[0].at("role"), "system");
  EXPECT_EQ(body.at("messages")[1].at("content"), "How many collections are hosted?");
}

TEST(HttpProvider, RetriesServerErrorsThenSucceeds) {
  std::atomic<int> calls{0};
  StubServer stub([&](const httplib::Request&, httplib::Response& res) {
    if (calls++ < 2) {
      res.status = 503;
      res.set_content("overloaded", "text/plain");
      return;
    }
    res.set_content(completion("ok"), "application/json");
  });
  auto cfg = config_for(stub);
  cfg.max_retries = 2;
  HttpProvider p(cfg);
  EXPECT_EQ(generate_completion(p, simple_conversation()).content, "ok");
  EXPECT_EQ(calls.load(), 3);
}

TEST(HttpProvider, ClientErrorIsNotRetried) {
  std::atomic<int> calls{0};
  StubServer stub([&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 401;
    res.set_content("{\"error\":\"bad key\"}", "application/json");
  });
  auto cfg = config_for(stub);
  cfg.max_retries = 3;
  HttpProvider p(cfg);
  try {
    generate_completion(p, simple_conversation());
    FAIL();
  } catch (const ProviderHttpError& e) {
    EXPECT_EQ(e.status(), 401);
    EXPECT_NE(e.body_excerpt().find("bad key"), std::string::npos);
  }
  EXPECT_EQ(calls.load(), 1);
}

TEST(HttpProvider, SlowServerTimesOut) {
  StubServer stub([](const httplib::Request&, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(1500));
    res.set_content(completion("late"), "application/json");
  });
  auto cfg = config_for(stub);
  cfg.timeout_s = 0.3;
  HttpProvider p(cfg);
  EXPECT_THROW(generate_completion(p, simple_conversation()), ProviderTimeout);
}

TEST(HttpProvider, UnreachableEndpointIsProviderError) {
  ProviderConfig cfg;
  cfg.endpoint_url = "http://127.0.0.1:1/v1/chat/completions";
  cfg.timeout_s = 1;
  cfg.api_key_env_var = "";
  HttpProvider p(cfg);
  EXPECT_THROW(generate_completion(p, simple_conversation()), ProviderError);
}

TEST(HttpProvider, MissingKeyFailsBeforeAnyRequest) {
  StubServer server([](const httplib::Request&, httplib::Response& res) { res.status = 500; });
  auto cfg = config_for(server);
  cfg.api_key_env_var = "COHORTQ_TEST_UNSET_KEY";
  unsetenv("COHORTQ_TEST_UNSET_KEY");
  HttpProvider p(cfg);
  try {
    generate_completion(p, simple_conversation());
    FAIL() << "expected ProviderError";
  } catch (const ProviderError& e) {
    EXPECT_NE(std::string(e.what()).find("COHORTQ_TEST_UNSET_KEY"), std::string::npos);
  }
  EXPECT_TRUE(server.requests().empty());
}

TEST(HttpProvider, MalformedBodyAndEmptyContent) {
  EXPECT_THROW(parse_completion_body("{}"), ProviderError);
  EXPECT_THROW(parse_completion_body("not json"), ProviderError);
  EXPECT_EQ(parse_completion_body(completion("x")), "x");
  StubServer stub([](const httplib::Request&, httplib::Response& res) {
    res.set_content(completion(""), "application/json");
  });
  HttpProvider p(config_for(stub));
  EXPECT_THROW(generate_completion(p, simple_conversation()), ProviderError);
}

// The key value reaches the Authorization header and nowhere else: not the
// request body, the config rendering, the transcript, or the log.
TEST(HttpProvider, ApiKeyNeverLeaksIntoArtifacts) {
  const std::string secret = "sk-secret-" + std::to_string(std::random_device{}());
  setenv("COHORTQ_TEST_API_KEY", secret.c_str(), 1);
  StubServer stub([](const httplib::Request& req, httplib::Response& res) {
    // echo part of the request back so a leak into the prompt would surface
    res.set_content(completion("```sql\nSELECT * FROM nope\n```\n" + req.get_header_value("Content-Type")),
                    "application/json");
  });
  std::ostringstream log_capture;
  set_log_sink(&log_capture);
  set_log_level(LogLevel::Debug);

  AppConfig app;
  app.provider = config_for(stub);
  HttpProvider p(app.provider);
  auto catalog = testutil::fixture_catalog();
  PipelineConfig pc;
  pc.max_attempts = 3;
  auto transcript = run_pipeline("How many collections are hosted?", catalog, p, pc);
  set_log_sink(&std::cerr);
  set_log_level(LogLevel::Info);

  for (const auto& req : stub.requests()) {
    EXPECT_EQ(req.get_header_value("Authorization"), "Bearer " + secret);
    EXPECT_EQ(req.body.find(secret), std::string::npos);
  }
  EXPECT_EQ(stub.requests().size(), 3u);
  EXPECT_EQ(config_to_json(app).find(secret), std::string::npos);
  EXPECT_NE(config_to_json(app).find("COHORTQ_TEST_API_KEY"), std::string::npos);
  EXPECT_EQ(to_json(transcript).dump().find(secret), std::string::npos);
  EXPECT_EQ(log_capture.str().find(secret), std::string::npos);
  EXPECT_EQ(p.request_body(simple_conversation()).find(secret), std::string::npos);
}
