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

#include "cohortq/service/api.hpp"

#include <random>

#include "cohortq/logging.hpp"
#include "cohortq/transcript_json.hpp"
#include "httplib.h"
#include "json.hpp"

namespace cohortq::service {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

HttpResult json_result(int status, const ordered_json& body) { return {status, "application/json", body.dump(), {}}; }

HttpResult error_result(int status, std::string_view code, std::string_view detail) {
  return json_result(status, {{"error", code}, {"detail", detail}});
}

std::size_t count_code_points(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

std::string random_session_id() {
  static std::mutex mutex;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mutex);
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng()),
                static_cast<unsigned long long>(rng()));
  return buf;
}

}  // namespace

SessionState::SessionState(std::string id, llm::Conversation conv)
    : session_id(std::move(id)),
      conversation(std::move(conv)),
      created_at(std::chrono::steady_clock::now()),
      last_used(created_at) {}

ApiService::ApiService(const Catalog* catalog, const llm::Provider& provider, ServiceOptions options)
    : catalog_(catalog), provider_(provider), options_(std::move(options)), store_(options_.store_dir) {}

void ApiService::evict_expired_locked(std::chrono::steady_clock::time_point now) {
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    // a session in use is never evicted
    std::unique_lock lock(it->second->mutex, std::try_to_lock);
    if (lock.owns_lock() && now - it->second->last_used > options_.session_ttl) {
      lock.unlock();
      it = sessions_.erase(it);
    } else {
      ++it;
    }
  }
}

std::shared_ptr<SessionState> ApiService::acquire_session(const std::optional<std::string>& requested) {
  std::lock_guard lock(sessions_mutex_);
  evict_expired_locked(std::chrono::steady_clock::now());
  if (requested) {
    auto it = sessions_.find(*requested);
    if (it != sessions_.end()) return it->second;
  }
  // unknown or expired ids start a fresh session under a new id
  std::string id = random_session_id();
  auto state = std::make_shared<SessionState>(id, llm::Conversation(system_prompt_for(*catalog_, options_.pipeline)));
  sessions_.emplace(id, state);
  return state;
}

HttpResult ApiService::post_query(std::string_view request_body) {
  if (!catalog_ || catalog_->empty()) return error_result(503, "catalog_not_loaded", "no catalog is loaded");
  json req;
  try {
    req = json::parse(request_body);
  } catch (const json::exception&) {
    return error_result(400, "invalid_json", "request body must be a JSON object");
  }
  if (!req.is_object() || !req.contains("input") || !req.at("input").is_string())
    return error_result(400, "invalid_input", "field 'input' must be a string");
  const std::string input = req.at("input").get<std::string>();
  if (input.find_first_not_of(" \t\r\n") == std::string::npos)
    return error_result(400, "invalid_input", "input is empty");
  if (count_code_points(input) > options_.max_input_chars)
    return error_result(400, "invalid_input",
                        "input exceeds " + std::to_string(options_.max_input_chars) + " characters");
  std::optional<std::string> requested;
  if (req.contains("session_id") && !req.at("session_id").is_null()) {
    if (!req.at("session_id").is_string()) return error_result(400, "invalid_input", "session_id must be a string");
    requested = req.at("session_id").get<std::string>();
  }

  auto session = acquire_session(requested);
  std::lock_guard session_lock(session->mutex);
  session->last_used = std::chrono::steady_clock::now();

  CorrectionTranscript transcript =
      run_pipeline(input, *catalog_, provider_, options_.pipeline, &session->conversation);
  session->last_transcripts.push_back(transcript);
  while (session->last_transcripts.size() > options_.transcripts_per_session) session->last_transcripts.pop_front();

  ordered_json body;
  body["session_id"] = session->session_id;
  body["transcript"] = to_json(transcript);
  body["cohort_id"] = nullptr;
  if (transcript.outcome == Outcome::ProviderFailure) {
    body["error"] = "provider_failure";
    body["detail"] = transcript.provider_error.value_or("");
    return json_result(503, body);
  }
  if (transcript.outcome == Outcome::Success && transcript.final_result && transcript.final_result->row_count() > 0) {
    try {
      body["cohort_id"] = materialize_cohort(transcript, options_.store_dir, catalog_->digest()).cohort_id;
    } catch (const Error& e) {
      log(LogLevel::Error, std::string("cohort materialization failed: ") + e.what());
      body["error"] = "storage_failure";
      body["detail"] = e.what();
      return json_result(500, body);
    }
  }
  return json_result(200, body);
}

HttpResult ApiService::get_schema() const {
  if (!catalog_ || catalog_->empty()) return error_result(404, "no_schema", "no catalog is loaded");
  ordered_json tables = ordered_json::array();
  for (const auto& t : catalog_->tables()) {
    ordered_json columns = ordered_json::array();
    for (const auto& c : t.schema.columns)
      columns.push_back({{"name", c.name}, {"type", to_string(c.type)}, {"nullable", c.nullable}});
    tables.push_back({{"table_name", t.schema.table_name},
                      {"aliases", t.schema.aliases},
                      {"row_count", t.rows.size()},
                      {"columns", columns}});
  }
  return json_result(200, {{"catalog_digest", catalog_->digest()}, {"tables", tables}});
}

HttpResult ApiService::get_export(std::string_view cohort_id, std::optional<std::string_view> format) const {
  auto fmt = parse_export_format(format.value_or("csv"));
  if (!fmt) return error_result(400, "unknown_format", "format must be csv or jsonl");
  std::optional<sql::ResultTable> table;
  try {
    table = store_.table(cohort_id);
  } catch (const Error& e) {
    return error_result(500, "storage_failure", e.what());
  }
  if (!table) return error_result(404, "unknown_cohort", "no cohort with id '" + std::string(cohort_id) + "'");
  HttpResult r;
  r.body = export_table(*table, *fmt);
  const bool csv = *fmt == ExportFormat::Csv;
  r.content_type = csv ? "text/csv; charset=utf-8" : "application/x-ndjson";
  r.headers["Content-Disposition"] =
      "attachment; filename=\"" + std::string(cohort_id) + (csv ? ".csv\"" : ".jsonl\"");
  return r;
}

HttpResult ApiService::get_health() const {
  const bool loaded = catalog_ && !catalog_->empty();
  ordered_json body = {{"status", loaded ? "ok" : "catalog_not_loaded"},
                       {"catalog_digest", loaded ? ordered_json(catalog_->digest()) : ordered_json()},
                       {"provider_kind", provider_.kind()}};
  return json_result(loaded ? 200 : 503, body);
}

HttpResult ApiService::list_cohorts() const {
  ordered_json items = ordered_json::array();
  try {
    for (const auto& m : store_.list())
      items.push_back({{"cohort_id", m.cohort_id},
                       {"created_at", m.created_at},
                       {"user_input", m.user_input},
                       {"row_count", m.row_count},
                       {"source_catalog", m.source_catalog}});
  } catch (const Error& e) {
    return error_result(500, "storage_failure", e.what());
  }
  return json_result(200, {{"cohorts", items}});
}

std::size_t ApiService::session_count() const {
  std::lock_guard lock(sessions_mutex_);
  return sessions_.size();
}

std::optional<std::vector<llm::ChatMessage>> ApiService::session_messages(const std::string& session_id) const {
  std::shared_ptr<SessionState> state;
  {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) return std::nullopt;
    state = it->second;
  }
  std::lock_guard lock(state->mutex);
  return state->conversation.messages();
}

void ApiService::mount(httplib::Server& server) {
  auto send = [](httplib::Response& res, const HttpResult& r) {
    res.status = r.status;
    for (const auto& [k, v] : r.headers) res.set_header(k, v);
    res.set_content(r.body, r.content_type);
  };
  server.Post("/api/query",
              [this, send](const httplib::Request& req, httplib::Response& res) { send(res, post_query(req.body)); });
  server.Get("/api/schema", [this, send](const httplib::Request&, httplib::Response& res) { send(res, get_schema()); });
  server.Get("/api/health", [this, send](const httplib::Request&, httplib::Response& res) { send(res, get_health()); });
  server.Get("/api/cohorts",
             [this, send](const httplib::Request&, httplib::Response& res) { send(res, list_cohorts()); });
  server.Get(R"(/api/cohort/([^/]+)/export)", [this, send](const httplib::Request& req, httplib::Response& res) {
    std::optional<std::string> format;
    if (req.has_param("format")) format = req.get_param_value("format");
    send(res, get_export(req.matches[1].str(), format ? std::optional<std::string_view>(*format) : std::nullopt));
  });
  if (options_.ui_dir && std::filesystem::is_directory(*options_.ui_dir))
    server.set_mount_point("/ui", options_.ui_dir->string());
  server.set_exception_handler([send](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    log(LogLevel::Error, "request failed: " + what);
    send(res, error_result(500, "internal_error", what));
  });
}

}  // namespace cohortq::service
