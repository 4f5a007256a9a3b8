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

#include "cohortq/eval/benchmark.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "cohortq/digest.hpp"
#include "cohortq/logging.hpp"
#include "cohortq/sql/parser.hpp"
#include "cohortq/transcript_json.hpp"

namespace cohortq::eval {

using nlohmann::json;

namespace {

std::optional<std::string> opt_string(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<std::string>();
}

BenchmarkCase parse_case(const json& doc, std::size_t line) {
  auto fail = [line](const std::string& why) {
    return BenchmarkParseError("benchmark line " + std::to_string(line) + ": " + why);
  };
  if (!doc.is_object()) throw fail("expected a JSON object");
  BenchmarkCase c;
  try {
    c.id = doc.at("id").is_string() ? doc.at("id").get<std::string>() : doc.at("id").dump();
    c.user_input = doc.at("user_input").get<std::string>();
    auto category = parse_category(doc.at("category").get<std::string>());
    if (!category) throw fail("category must be information_extraction or cohort_discovery");
    c.category = *category;
    if (doc.contains("expected_result") && !doc.at("expected_result").is_null())
      c.expected_result = result_table_from_json(doc.at("expected_result"));
    c.expected_query = opt_string(doc, "expected_query");
    if (auto label = opt_string(doc, "human_label")) {
      c.human_label = parse_judgment(*label);
      if (!c.human_label) throw fail("human_label must be correct or incorrect");
    }
    c.corrected_query = opt_string(doc, "corrected_query");
  } catch (const json::exception& e) {
    throw fail(e.what());
  } catch (const BenchmarkParseError&) {
    throw;
  } catch (const Error& e) {
    throw fail(e.what());
  }
  if (c.user_input.empty()) throw fail("user_input is empty");
  if (!c.expected_result && !c.human_label) throw fail("needs expected_result or human_label");
  if (c.corrected_query && c.human_label != Judgment::Incorrect)
    throw fail("corrected_query requires human_label = incorrect");
  return c;
}

bool has_order_by(const std::optional<std::string>& query) {
  if (!query) return false;
  try {
    return !sql::parse_query(*query).order_by.empty();
  } catch (const sql::QueryException&) {
    return false;
  }
}

}  // namespace

std::vector<BenchmarkCase> parse_benchmark(std::string_view jsonl) {
  std::vector<BenchmarkCase> cases;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= jsonl.size()) {
    auto end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      throw BenchmarkParseError("benchmark line " + std::to_string(line_no) + ": " + e.what());
    }
    auto c = parse_case(doc, line_no);
    if (!ids.insert(c.id).second)
      throw BenchmarkParseError("benchmark line " + std::to_string(line_no) + ": duplicate id '" + c.id + "'");
    cases.push_back(std::move(c));
  }
  if (cases.empty()) throw BenchmarkParseError("benchmark has no cases");
  return cases;
}

std::vector<BenchmarkCase> load_benchmark(const std::filesystem::path& path) {
  try {
    return parse_benchmark(read_file(path));
  } catch (const StorageError& e) {
    throw BenchmarkParseError(e.what());
  }
}

bool tables_match(const sql::ResultTable& got, const sql::ResultTable& expected, bool ordered) {
  if (got.column_types != expected.column_types) return false;
  if (got.rows.size() != expected.rows.size()) return false;
  if (ordered) return got.rows == expected.rows;
  auto row_less = [](const std::vector<Value>& a, const std::vector<Value>& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end(),
                                                  [](const Value& x, const Value& y) { return total_order(x, y); }) <
           0;
  };
  auto a = got.rows;
  auto b = expected.rows;
  std::sort(a.begin(), a.end(), row_less);
  std::sort(b.begin(), b.end(), row_less);
  return a == b;
}

Judgment judge_case(const BenchmarkCase& c, const CorrectionTranscript& transcript, const Catalog& /*catalog*/) {
  if (c.human_label) return *c.human_label;
  if (!c.expected_result) throw UnjudgeableError("case '" + c.id + "' has neither a human label nor an expected result");
  if (transcript.outcome != Outcome::Success || !transcript.final_result) return Judgment::Incorrect;
  const bool ordered = has_order_by(transcript.final_query);
  return tables_match(*transcript.final_result, *c.expected_result, ordered) ? Judgment::Correct
                                                                             : Judgment::Incorrect;
}

BenchmarkRun run_benchmark_cases(const std::vector<BenchmarkCase>& cases, const Catalog& catalog,
                                 const llm::Provider& provider, const PipelineConfig& config,
                                 const std::optional<std::filesystem::path>& out_dir) {
  if (cases.empty()) throw BenchmarkParseError("benchmark has no cases");
  BenchmarkRun run;
  std::vector<CaseJudgment> judgments;
  std::vector<IncorrectPair> pairs;
  for (const auto& c : cases) {
    auto transcript = run_pipeline(c.user_input, catalog, provider, config);
    CaseJudgment j;
    j.id = c.id;
    j.category = c.category;
    j.judgment = judge_case(c, transcript, catalog);
    j.outcome = std::string(to_string(transcript.outcome));
    j.attempts = static_cast<int>(transcript.attempts.size());
    j.generated_query = transcript.last_query();
    j.corrected_query = c.corrected_query;
    if (j.judgment == Judgment::Incorrect && c.corrected_query)
      pairs.push_back({j.generated_query.value_or(""), *c.corrected_query});
    log(LogLevel::Info, "case " + c.id + ": " + j.outcome + ", " + std::string(to_string(j.judgment)));
    judgments.push_back(std::move(j));
    run.transcripts.push_back(std::move(transcript));
  }
  run.report = compute_metrics(judgments, pairs);

  if (out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*out_dir, ec);
    if (ec) throw StorageError("cannot create " + out_dir->string() + ": " + ec.message());
    auto write = [](const std::filesystem::path& p, const std::string& data) {
      std::ofstream out(p, std::ios::binary | std::ios::trunc);
      if (!out) throw StorageError("cannot write " + p.string());
      out << data;
    };
    write(*out_dir / "report.json", report_to_json(run.report).dump(2) + "\n");
    write(*out_dir / "report.txt", render_report_text(run.report));
    std::string lines;
    for (const auto& t : run.transcripts) lines += to_json(t).dump() + "\n";
    write(*out_dir / "transcripts.jsonl", lines);
  }
  return run;
}

EvalReport run_benchmark(const std::filesystem::path& benchmark_file, const Catalog& catalog,
                         const llm::Provider& provider, const PipelineConfig& config,
                         const std::optional<std::filesystem::path>& out_dir) {
  return run_benchmark_cases(load_benchmark(benchmark_file), catalog, provider, config, out_dir).report;
}

}  // namespace cohortq::eval
