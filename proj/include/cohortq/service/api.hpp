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

#pragma once

#include <chrono>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "cohortq/catalog.hpp"
#include "cohortq/cohort_store.hpp"
#include "cohortq/llm/provider.hpp"
#include "cohortq/pipeline.hpp"

namespace httplib {
class Server;
}

namespace cohortq::service {

struct HttpResult {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  /// Extra response headers, e.g. Content-Disposition.
  std::map<std::string, std::string> headers;
};

struct ServiceOptions {
  PipelineConfig pipeline;
  std::filesystem::path store_dir = "cohorts";
  std::chrono::seconds session_ttl{30 * 60};
  std::size_t transcripts_per_session = 20;
  std::size_t max_input_chars = 4000;
  /// Directory served under /ui when set and present.
  std::optional<std::filesystem::path> ui_dir;
};

/// One conversation per session; access is serialized by `mutex`.
struct SessionState {
  std::string session_id;
  llm::Conversation conversation;
  std::chrono::steady_clock::time_point created_at;
  std::chrono::steady_clock::time_point last_used;
  std::deque<CorrectionTranscript> last_transcripts;
  std::mutex mutex;

  SessionState(std::string id, llm::Conversation conv);
};

/// Request handlers, independent of the socket layer so they can be called
/// directly.  The catalog may be null, which reports as "not loaded".
class ApiService {
 public:
  ApiService(const Catalog* catalog, const llm::Provider& provider, ServiceOptions options);

  HttpResult post_query(std::string_view request_body);
  HttpResult get_schema() const;
  HttpResult get_export(std::string_view cohort_id, std::optional<std::string_view> format) const;
  HttpResult get_health() const;
  HttpResult list_cohorts() const;

  /// Registers the routes on `server`.
  void mount(httplib::Server& server);

  std::size_t session_count() const;
  /// Conversation messages of a live session (copy), for inspection.
  std::optional<std::vector<llm::ChatMessage>> session_messages(const std::string& session_id) const;

 private:
  std::shared_ptr<SessionState> acquire_session(const std::optional<std::string>& requested);
  void evict_expired_locked(std::chrono::steady_clock::time_point now);

  const Catalog* catalog_;
  const llm::Provider& provider_;
  ServiceOptions options_;
  CohortStore store_;
  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<SessionState>> sessions_;
};

}  // namespace cohortq::service
