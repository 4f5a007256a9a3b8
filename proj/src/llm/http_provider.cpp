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

#include <chrono>
#include <cstdlib>
#include <thread>

#include "cohortq/llm/provider.hpp"
#include "httplib.h"
#include "json.hpp"

namespace cohortq::llm {

using nlohmann::json;

namespace {

constexpr std::size_t kExcerptLimit = 200;

std::string excerpt(std::string_view body) {
  if (body.size() <= kExcerptLimit) return std::string(body);
  return std::string(body.substr(0, kExcerptLimit)) + "...";
}

bool retryable(int status) { return status == 429 || status >= 500; }

}  // namespace

std::string parse_completion_body(std::string_view body) {
  try {
    json doc = json::parse(body);
    const auto& content = doc.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw Error("content is not a string");
    return content.get<std::string>();
  } catch (const std::exception&) {
    throw ProviderHttpError(200, "malformed completion body: " + excerpt(body));
  }
}

HttpProvider::HttpProvider(ProviderConfig config) : config_(std::move(config)) {
  const auto& url = config_.endpoint_url;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error("endpoint_url must include a scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

std::string HttpProvider::request_body(const Conversation& conversation) const {
  json messages = json::array();
  for (const auto& m : conversation.messages())
    messages.push_back({{"role", std::string(to_string(m.role))}, {"content", m.content}});
  json body = {{"model", config_.model_name},
               {"messages", messages},
               {"temperature", config_.temperature},
               {"max_tokens", config_.max_response_tokens}};
  return body.dump();
}

ChatMessage HttpProvider::complete(const Conversation& conversation) const {
  httplib::Client client(scheme_host_port_);
  const auto secs = static_cast<time_t>(config_.timeout_s);
  const auto usecs = static_cast<time_t>((config_.timeout_s - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  httplib::Headers headers;
  // an empty variable name means the endpoint takes no credentials
  if (!config_.api_key_env_var.empty()) {
    const char* key = std::getenv(config_.api_key_env_var.c_str());
    if (!key || !*key) throw ProviderError("environment variable " + config_.api_key_env_var + " is not set");
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  const std::string body = request_body(conversation);

  for (int attempt = 0;; ++attempt) {
    auto res = client.Post(path_, headers, body, "application/json");
    const bool last = attempt >= config_.max_retries;
    if (!res) {
      const auto err = res.error();
      if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read) {
        if (last) throw ProviderTimeout("provider did not respond within " + std::to_string(config_.timeout_s) + " s");
      } else if (last) {
        throw ProviderHttpError(0, "request failed: " + httplib::to_string(err));
      }
    } else if (res->status == 200) {
      std::string content = parse_completion_body(res->body);
      if (content.empty()) throw ProviderError("model returned an empty message");
      return ChatMessage{Role::Assistant, std::move(content)};
    } else if (last || !retryable(res->status)) {
      throw ProviderHttpError(res->status, excerpt(res->body));
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(250) * (1 << std::min(attempt, 5)));
  }
}

}  // namespace cohortq::llm
