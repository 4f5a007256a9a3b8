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

#include "cohortq/transcript_json.hpp"

namespace cohortq {

using nlohmann::json;

json cell_to_json(const Value& v) {
  if (v.is_text()) return v.text();
  if (v.is_integer()) return v.integer();
  if (v.is_date()) return v.date().to_string();
  return nullptr;
}

Value cell_from_json(const json& cell, ColumnType type) {
  if (cell.is_null()) return Value();
  switch (type) {
    case ColumnType::Text: return Value(cell.get<std::string>());
    case ColumnType::Integer: return Value(cell.get<std::int64_t>());
    case ColumnType::Date: {
      auto d = Date::parse(cell.get<std::string>());
      if (!d) throw Error("invalid date cell " + cell.dump());
      return Value(*d);
    }
  }
  return Value();
}

json to_json(const sql::ResultTable& table) {
  json cols = json::array();
  for (std::size_t i = 0; i < table.column_names.size(); ++i)
    cols.push_back({{"name", table.column_names[i]}, {"type", std::string(to_string(table.column_types[i]))}});
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (const auto& cell : row) r.push_back(cell_to_json(cell));
    rows.push_back(std::move(r));
  }
  return {{"columns", cols}, {"rows", rows}, {"row_count", table.rows.size()}};
}

sql::ResultTable result_table_from_json(const json& doc) {
  sql::ResultTable t;
  for (const auto& c : doc.at("columns")) {
    t.column_names.push_back(c.at("name").get<std::string>());
    auto type = parse_column_type(c.at("type").get<std::string>());
    if (!type) throw Error("unknown column type in result table");
    t.column_types.push_back(*type);
  }
  for (const auto& r : doc.at("rows")) {
    if (r.size() != t.column_types.size()) throw Error("result row arity does not match its columns");
    std::vector<Value> row;
    for (std::size_t i = 0; i < r.size(); ++i) row.push_back(cell_from_json(r[i], t.column_types[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace {

json optional_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

std::optional<std::string> read_optional_string(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<std::string>();
}

}  // namespace

json to_json(const sql::QueryError& e) {
  json pos = nullptr;
  if (e.position)
    pos = {{"line", e.position->line},
           {"column", e.position->column},
           {"token", e.position->token},
           {"line_text", e.position->line_text}};
  return {{"kind", std::string(sql::to_string(e.kind))},
          {"group", std::string(sql::to_string(sql::classify_error(e)))},
          {"message", e.message},
          {"position", pos},
          {"hint", optional_string(e.hint)}};
}

sql::QueryError query_error_from_json(const json& doc) {
  sql::QueryError e;
  auto kind = sql::parse_error_kind(doc.at("kind").get<std::string>());
  if (!kind) throw Error("unknown query error kind");
  e.kind = *kind;
  e.message = doc.at("message").get<std::string>();
  if (doc.contains("position") && !doc.at("position").is_null()) {
    const auto& p = doc.at("position");
    e.position = sql::SourcePosition{p.at("line").get<std::size_t>(), p.at("column").get<std::size_t>(),
                                     p.at("token").get<std::string>(), p.at("line_text").get<std::string>()};
  }
  e.hint = read_optional_string(doc, "hint");
  return e;
}

json to_json(const CorrectionTranscript& t) {
  json attempts = json::array();
  for (const auto& a : t.attempts) {
    json prompt = json::array();
    for (const auto& m : a.prompt) prompt.push_back({{"role", std::string(llm::to_string(m.role))}, {"content", m.content}});
    json error = nullptr;
    if (a.error) {
      error = {{"kind", a.error->kind},
               {"group", a.error->group},
               {"message", a.error->message},
               {"formatted", a.error->formatted},
               {"query_error", a.error->query_error ? to_json(*a.error->query_error) : json(nullptr)}};
    }
    attempts.push_back({{"index", a.index},
                        {"prompt", prompt},
                        {"raw_response", a.raw_response},
                        {"extracted_query", optional_string(a.extracted_query)},
                        {"error", error},
                        {"result", a.result ? to_json(*a.result) : json(nullptr)},
                        {"elapsed_ms", a.elapsed_ms}});
  }
  return {{"user_input", t.user_input},
          {"outcome", std::string(to_string(t.outcome))},
          {"attempt_count", t.attempts.size()},
          {"attempts", attempts},
          {"final_query", optional_string(t.final_query)},
          {"final_result", t.final_result ? to_json(*t.final_result) : json(nullptr)},
          {"provider_error", optional_string(t.provider_error)}};
}

CorrectionTranscript transcript_from_json(const json& doc) {
  CorrectionTranscript t;
  t.user_input = doc.at("user_input").get<std::string>();
  auto outcome = parse_outcome(doc.at("outcome").get<std::string>());
  if (!outcome) throw Error("unknown transcript outcome");
  t.outcome = *outcome;
  for (const auto& a : doc.at("attempts")) {
    Attempt at;
    at.index = a.at("index").get<int>();
    for (const auto& m : a.at("prompt")) {
      auto role = llm::parse_role(m.at("role").get<std::string>());
      if (!role) throw Error("unknown message role");
      at.prompt.push_back({*role, m.at("content").get<std::string>()});
    }
    at.raw_response = a.at("raw_response").get<std::string>();
    at.extracted_query = read_optional_string(a, "extracted_query");
    if (!a.at("error").is_null()) {
      const auto& e = a.at("error");
      AttemptError err;
      err.kind = e.at("kind").get<std::string>();
      err.group = e.at("group").get<std::string>();
      err.message = e.at("message").get<std::string>();
      err.formatted = e.at("formatted").get<std::string>();
      if (!e.at("query_error").is_null()) err.query_error = query_error_from_json(e.at("query_error"));
      at.error = std::move(err);
    }
    if (!a.at("result").is_null()) at.result = result_table_from_json(a.at("result"));
    at.elapsed_ms = a.at("elapsed_ms").get<double>();
    t.attempts.push_back(std::move(at));
  }
  t.final_query = read_optional_string(doc, "final_query");
  if (!doc.at("final_result").is_null()) t.final_result = result_table_from_json(doc.at("final_result"));
  t.provider_error = read_optional_string(doc, "provider_error");
  return t;
}

}  // namespace cohortq
