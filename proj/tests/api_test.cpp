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

#include <thread>

#include "cohortq/service/api.hpp"
#include "httplib.h"
#include "json.hpp"
#include "test_util.hpp"

using namespace cohortq;
using namespace cohortq::service;
using nlohmann::json;

namespace {

const Catalog& catalog() {
  static const Catalog c = testutil::fixture_catalog();
  return c;
}

const llm::ReplayProvider& replay() {
  static const auto p = llm::ReplayProvider::from_file(testutil::fixture("replay.jsonl"));
  return p;
}

ServiceOptions options_in(const testutil::TempDir& dir) {
  ServiceOptions o;
  o.store_dir = dir.path() / "cohorts";
  return o;
}

std::string query_body(const std::string& input, const std::optional<std::string>& session = std::nullopt) {
  json j{{"input", input}};
  if (session) j["session_id"] = *session;
  return j.dump();
}

const char* kCohortInput = "I want all images in the NSCLC Radiomics collection";

}  // namespace

TEST(Api, QueryReturnsTranscriptAndCohort) {
  testutil::TempDir dir;
  ApiService api(&catalog(), replay(), options_in(dir));
  auto r = api.post_query(query_body(kCohortInput));
  ASSERT_EQ(r.status, 200) << r.body;
  auto doc = json::parse(r.body);
  EXPECT_EQ(doc.at("session_id").get<std::string>().size(), 32u);
  EXPECT_EQ(doc.at("transcript").at("outcome"), "Success");
  ASSERT_TRUE(doc.at("cohort_id").is_string());

  auto id = doc.at("cohort_id").get<std::string>();
  auto csv = api.get_export(id, std::nullopt);
  EXPECT_EQ(csv.status, 200);
  EXPECT_EQ(csv.content_type.rfind("text/csv", 0), 0u);
  auto stored = CohortStore(dir.path() / "cohorts").table(id);
  ASSERT_TRUE(stored);
  EXPECT_EQ(csv.body, export_table(*stored, ExportFormat::Csv));
  EXPECT_NE(csv.headers.at("Content-Disposition").find(id), std::string::npos);

  auto jsonl = api.get_export(id, "jsonl");
  EXPECT_EQ(jsonl.status, 200);
  EXPECT_EQ(jsonl.body, export_table(*stored, ExportFormat::Jsonl));

  EXPECT_EQ(api.get_export(id, "xml").status, 400);
  EXPECT_EQ(api.get_export("01ARZ3NDEKTSV4RRFFQ69G5FAV", std::nullopt).status, 404);
  EXPECT_EQ(api.get_export("nonsense", std::nullopt).status, 404);

  auto listed = json::parse(api.list_cohorts().body);
  ASSERT_EQ(listed.at("cohorts").size(), 1u);
  EXPECT_EQ(listed.at("cohorts")[0].at("cohort_id"), id);
  EXPECT_EQ(listed.at("cohorts")[0].at("source_catalog"), catalog().digest());
}

TEST(Api, AggregateAnswerIsNotStoredWhenEmpty) {
  testutil::TempDir dir;
  ApiService api(&catalog(), replay(), options_in(dir));
  // cd-07 exhausts its attempts: no cohort
  auto r = api.post_query(query_body("Curate all GBM MRI studies acquired in 2009 or later"));
  ASSERT_EQ(r.status, 200);
  auto doc = json::parse(r.body);
  EXPECT_EQ(doc.at("transcript").at("outcome"), "ExhaustedAttempts");
  EXPECT_EQ(doc.at("transcript").at("attempt_count"), 10);
  EXPECT_TRUE(doc.at("cohort_id").is_null());
}

TEST(Api, BadRequests) {
  testutil::TempDir dir;
  ApiService api(&catalog(), replay(), options_in(dir));
  EXPECT_EQ(api.post_query("{").status, 400);
  EXPECT_EQ(api.post_query("[]").status, 400);
  EXPECT_EQ(api.post_query("{}").status, 400);
  EXPECT_EQ(api.post_query(R"({"input": ""})").status, 400);
  EXPECT_EQ(api.post_query(R"({"input": 5})").status, 400);
  EXPECT_EQ(api.post_query(query_body(std::string(4001, 'x'))).status, 400);
  // 4000 multi-byte characters are within the limit
  std::string wide;
  for (int i = 0; i < 4000; ++i) wide += "\xC3\xA9";
  EXPECT_NE(api.post_query(query_body(wide)).status, 400);
  EXPECT_EQ(api.session_count(), 1u);
}

TEST(Api, ProviderFailureIs503) {
  testutil::TempDir dir;
  ApiService api(&catalog(), replay(), options_in(dir));
  auto r = api.post_query(query_body("a question nobody recorded"));
  EXPECT_EQ(r.status, 503);
  EXPECT_EQ(json::parse(r.body).at("error"), "provider_failure");
}

TEST(Api, MissingCatalog) {
  testutil::TempDir dir;
  ApiService api(nullptr, replay(), options_in(dir));
  EXPECT_EQ(api.post_query(query_body(kCohortInput)).status, 503);
  auto h = api.get_health();
  EXPECT_EQ(h.status, 503);
  EXPECT_EQ(json::parse(h.body).at("status"), "catalog_not_loaded");
  EXPECT_EQ(api.get_schema().status, 404);
}

TEST(Api, SchemaAndHealth) {
  testutil::TempDir dir;
  ApiService api(&catalog(), replay(), options_in(dir));
  auto s = api.get_schema();
  ASSERT_EQ(s.status, 200);
  EXPECT_EQ(s.body, api.get_schema().body);
  auto doc = json::parse(s.body);
  EXPECT_EQ(doc.at("catalog_digest"), catalog().digest());
  ASSERT_EQ(doc.at("tables").size(), 1u);
  const auto& t = doc.at("tables")[0];
  EXPECT_EQ(t.at("table_name"), "dicom_all");
  EXPECT_EQ(t.at("row_count"), 12);
  ASSERT_EQ(t.at("columns").size(), 13u);
  for (const auto& c : t.at("columns")) {
    if (c.at("name") == "StudyDate") EXPECT_EQ(c.at("type"), "Date");
    if (c.at("name") == "PatientAge") EXPECT_EQ(c.at("type"), "Text");
  }

  auto h = json::parse(api.get_health().body);
  EXPECT_EQ(h.at("status"), "ok");
  EXPECT_EQ(h.at("provider_kind"), "replay");
  EXPECT_EQ(h.at("catalog_digest"), catalog().digest());

  auto q = json::parse(api.post_query(query_body(kCohortInput)).body);
  auto m = CohortStore(dir.path() / "cohorts").manifest(q.at("cohort_id").get<std::string>());
  ASSERT_TRUE(m);
  EXPECT_EQ(m->source_catalog, h.at("catalog_digest"));
}

TEST(Api, SessionsCarryConversation) {
  testutil::TempDir dir;
  ApiService api(&catalog(), replay(), options_in(dir));
  auto first = json::parse(api.post_query(query_body("How many collections are hosted?")).body);
  auto sid = first.at("session_id").get<std::string>();
  auto second = json::parse(api.post_query(query_body("Which imaging modalities are available?", sid)).body);
  EXPECT_EQ(second.at("session_id"), sid);
  EXPECT_EQ(second.at("transcript").at("outcome"), "Success");
  auto messages = api.session_messages(sid);
  ASSERT_TRUE(messages);
  ASSERT_EQ(messages->size(), 5u);
  EXPECT_EQ((*messages)[1].content, "How many collections are hosted?");
  EXPECT_EQ((*messages)[3].content, "Which imaging modalities are available?");

  auto fresh = json::parse(api.post_query(query_body("Which imaging modalities are available?", "deadbeef")).body);
  EXPECT_NE(fresh.at("session_id"), "deadbeef");
  EXPECT_NE(fresh.at("session_id"), sid);
}

TEST(Api, ConcurrentSessionsStayIsolated) {
  testutil::TempDir dir;
  ApiService api(&catalog(), replay(), options_in(dir));
  const std::vector<std::string> inputs = {"How many collections are hosted?", "Which imaging modalities are available?",
                                           "How many patients are in the TCGA-GBM collection?",
                                           "Which manufacturers made the CT scanners?"};
  constexpr int kThreads = 8;
  std::vector<std::string> sids(kThreads);
  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&, t] {
      std::optional<std::string> sid;
      for (int k = 0; k < 3; ++k) {
        const auto& input = inputs[(t + k) % inputs.size()];
        auto doc = json::parse(api.post_query(query_body(input, sid)).body);
        sid = doc.at("session_id").get<std::string>();
      }
      sids[t] = *sid;
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(api.session_count(), static_cast<std::size_t>(kThreads));
  for (int t = 0; t < kThreads; ++t) {
    auto messages = api.session_messages(sids[t]);
    ASSERT_TRUE(messages);
    ASSERT_EQ(messages->size(), 7u);
    for (int k = 0; k < 3; ++k) EXPECT_EQ((*messages)[1 + 2 * k].content, inputs[(t + k) % inputs.size()]);
  }
}

TEST(Api, ServesOverHttp) {
  testutil::TempDir dir;
  ApiService api(&catalog(), replay(), options_in(dir));
  httplib::Server server;
  api.mount(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  auto schema = client.Get("/api/schema");
  ASSERT_TRUE(schema);
  EXPECT_EQ(schema->body, api.get_schema().body);

  auto post = client.Post("/api/query", query_body(kCohortInput), "application/json");
  ASSERT_TRUE(post);
  ASSERT_EQ(post->status, 200);
  auto id = json::parse(post->body).at("cohort_id").get<std::string>();
  auto csv = client.Get("/api/cohort/" + id + "/export?format=csv");
  ASSERT_TRUE(csv);
  EXPECT_EQ(csv->status, 200);
  EXPECT_EQ(csv->body, api.get_export(id, "csv").body);
  auto bad = client.Post("/api/query", "not json", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  auto missing = client.Get("/api/cohort/01ARZ3NDEKTSV4RRFFQ69G5FAV/export");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);

  server.stop();
  th.join();
}
