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

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "cohortq/eval/benchmark.hpp"
#include "cohortq/eval/metrics.hpp"
#include "cohortq/llm/provider.hpp"
#include "cohortq/transcript_json.hpp"
#include "levenshtein_oracle.hpp"
#include "test_util.hpp"

using namespace cohortq;
using namespace cohortq::eval;

namespace {

std::vector<CaseJudgment> judgments(std::size_t correct, std::size_t incorrect) {
  std::vector<CaseJudgment> out;
  for (std::size_t i = 0; i < correct + incorrect; ++i) {
    CaseJudgment j;
    j.id = "c" + std::to_string(i);
    j.category = i % 2 ? Category::CohortDiscovery : Category::InformationExtraction;
    j.judgment = i < correct ? Judgment::Correct : Judgment::Incorrect;
    out.push_back(j);
  }
  return out;
}

// Oracle for mean and sample standard deviation, two-pass in long double.
std::pair<double, double> mean_std(const std::vector<std::size_t>& v) {
  if (v.empty()) return {0.0, 0.0};
  long double sum = 0;
  for (auto x : v) sum += x;
  const long double mean = sum / v.size();
  if (v.size() < 2) return {static_cast<double>(mean), 0.0};
  long double ss = 0;
  for (auto x : v) ss += (x - mean) * (x - mean);
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(ss / (v.size() - 1)))};
}

std::size_t oracle_distance(const std::string& a, const std::string& b) {
  auto m = std::make_unique<oracle::MemoLevenshtein<400>>(std::u32string(a.begin(), a.end()));
  for (char c : b) m->push(static_cast<char32_t>(static_cast<unsigned char>(c)));
  return m->distance();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Catalog& catalog() {
  static const Catalog c = testutil::fixture_catalog();
  return c;
}

}  // namespace

TEST(Metrics, FortyFourOfFifty) {
  auto r = compute_metrics(judgments(44, 6), {});
  EXPECT_EQ(r.n, 50u);
  EXPECT_EQ(r.correct, 44u);
  EXPECT_NEAR(r.accuracy, 0.88, 1e-12);
  EXPECT_NEAR(r.f1, 88.0 / 94.0, 1e-12);
  EXPECT_NEAR(r.f1, 0.9362, 5e-5);
}

TEST(Metrics, AllCorrectAndNoneCorrect) {
  auto all = compute_metrics(judgments(7, 0), {});
  EXPECT_EQ(all.accuracy, 1.0);
  EXPECT_EQ(all.f1, 1.0);
  auto none = compute_metrics(judgments(0, 7), {});
  EXPECT_EQ(none.accuracy, 0.0);
  EXPECT_EQ(none.f1, 0.0);
  EXPECT_THROW(compute_metrics({}, {}), std::invalid_argument);
}

TEST(Metrics, F1NeverBelowAccuracy) {
  for (std::size_t n = 1; n <= 200; ++n)
    for (std::size_t c = 0; c <= n; ++c) {
      auto r = compute_metrics(judgments(c, n - c), {});
      ASSERT_GE(r.f1 + 1e-15, r.accuracy) << c << "/" << n;
      ASSERT_LE(r.f1, 1.0);
    }
}

TEST(Metrics, PerCategoryCounts) {
  auto r = compute_metrics(judgments(3, 2), {});
  EXPECT_EQ(r.per_category.at("information_extraction"), (CategoryCounts{3, 2}));
  EXPECT_EQ(r.per_category.at("cohort_discovery"), (CategoryCounts{2, 1}));
}

TEST(Metrics, EditStatistics) {
  std::vector<IncorrectPair> pairs = {{"kitten", "sitting"}, {"abc", "abc"}, {"SELECT  a", "SELECT a"}, {"", "xyz"}};
  auto r = compute_metrics(judgments(1, 4), pairs);
  EXPECT_EQ(r.edit_distances, (std::vector<std::size_t>{3, 0, 1, 3}));
  auto [mean, sd] = mean_std(r.edit_distances);
  EXPECT_NEAR(r.edit_mean, mean, 1e-12);
  EXPECT_NEAR(r.edit_std, sd, 1e-12);
  EXPECT_EQ(r.edit_distances_collapsed, (std::vector<std::size_t>{3, 0, 0, 3}));

  auto one = compute_metrics(judgments(1, 1), {{"a", "b"}});
  EXPECT_EQ(one.edit_mean, 1.0);
  EXPECT_EQ(one.edit_std, 0.0);
  auto empty = compute_metrics(judgments(1, 0), {});
  EXPECT_EQ(empty.edit_mean, 0.0);
  EXPECT_EQ(empty.edit_std, 0.0);
}

TEST(Metrics, SummaryMatchesOracle) {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<std::size_t> v(rng() % 20);
    for (auto& x : v) x = rng() % 100;
    auto s = summarize(v);
    auto [mean, sd] = mean_std(v);
    ASSERT_NEAR(s.mean, mean, 1e-9);
    ASSERT_NEAR(s.std, sd, 1e-9);
  }
}

TEST(Metrics, PureFunction) {
  auto j = judgments(9, 4);
  std::vector<IncorrectPair> pairs = {{"a", "bb"}, {"SELECT x", "SELECT y"}};
  EXPECT_EQ(compute_metrics(j, pairs), compute_metrics(j, pairs));
  EXPECT_EQ(report_to_json(compute_metrics(j, pairs)).dump(), report_to_json(compute_metrics(j, pairs)).dump());
}

TEST(Benchmark, ParseFixture) {
  auto cases = load_benchmark(testutil::fixture("benchmark.jsonl"));
  ASSERT_EQ(cases.size(), 20u);
  EXPECT_EQ(cases[0].id, "ie-01");
  ASSERT_TRUE(cases[0].expected_result);
  EXPECT_EQ(cases[0].expected_result->rows[0][0], Value(std::int64_t{4}));
  std::size_t labelled = 0;
  for (const auto& c : cases) labelled += c.human_label.has_value();
  EXPECT_EQ(labelled, 6u);
}

TEST(Benchmark, ParseErrors) {
  const std::string ok = R"({"id":"a","category":"cohort_discovery","user_input":"x","human_label":"correct"})";
  EXPECT_EQ(parse_benchmark(ok + "\n\n").size(), 1u);
  EXPECT_THROW(parse_benchmark(""), BenchmarkParseError);
  EXPECT_THROW(parse_benchmark("\n  \n"), BenchmarkParseError);
  EXPECT_THROW(parse_benchmark("{not json"), BenchmarkParseError);
  EXPECT_THROW(parse_benchmark(ok + "\n" + ok), BenchmarkParseError);
  EXPECT_THROW(parse_benchmark(R"({"id":"a","category":"cohort_discovery","user_input":"x"})"), BenchmarkParseError);
  EXPECT_THROW(parse_benchmark(R"({"id":"a","category":"bogus","user_input":"x","human_label":"correct"})"),
               BenchmarkParseError);
  EXPECT_THROW(parse_benchmark(
                   R"({"id":"a","category":"cohort_discovery","user_input":"x","human_label":"correct","corrected_query":"SELECT 1"})"),
               BenchmarkParseError);
}

TEST(Benchmark, TablesMatch) {
  sql::ResultTable a{{"x"}, {ColumnType::Integer}, {{Value(std::int64_t{1})}, {Value(std::int64_t{2})}}};
  sql::ResultTable b{{"renamed"}, {ColumnType::Integer}, {{Value(std::int64_t{2})}, {Value(std::int64_t{1})}}};
  EXPECT_TRUE(tables_match(a, b, false));
  EXPECT_FALSE(tables_match(a, b, true));
  sql::ResultTable c{{"x"}, {ColumnType::Text}, {{Value(std::string("1"))}, {Value(std::string("2"))}}};
  EXPECT_FALSE(tables_match(a, c, false));
  sql::ResultTable d{{"x"}, {ColumnType::Integer}, {{Value(std::int64_t{1})}, {Value(std::int64_t{1})}}};
  EXPECT_FALSE(tables_match(a, d, false));  // multiset, not set
}

TEST(Benchmark, JudgeCase) {
  BenchmarkCase c;
  c.id = "x";
  c.user_input = "How many collections are hosted?";
  c.expected_result = sql::ResultTable{{"n"}, {ColumnType::Integer}, {{Value(std::int64_t{4})}}};

  llm::ScriptedProvider good({"```\nSELECT COUNT(DISTINCT collection_id) FROM dicom_all\n```"});
  auto t = run_pipeline(c.user_input, catalog(), good, {});
  EXPECT_EQ(judge_case(c, t, catalog()), Judgment::Correct);

  llm::ScriptedProvider wrong({"```\nSELECT COUNT(DISTINCT PatientID) FROM dicom_all\n```"});
  EXPECT_EQ(judge_case(c, run_pipeline(c.user_input, catalog(), wrong, {}), catalog()), Judgment::Incorrect);

  llm::ScriptedProvider none({"no query here"});
  PipelineConfig one_try;
  one_try.max_attempts = 1;
  auto exhausted = run_pipeline(c.user_input, catalog(), none, one_try);
  ASSERT_EQ(exhausted.outcome, Outcome::ExhaustedAttempts);
  EXPECT_EQ(judge_case(c, exhausted, catalog()), Judgment::Incorrect);

  c.human_label = Judgment::Incorrect;
  EXPECT_EQ(judge_case(c, t, catalog()), Judgment::Incorrect);

  BenchmarkCase bare;
  bare.id = "y";
  bare.user_input = "q";
  EXPECT_THROW(judge_case(bare, t, catalog()), UnjudgeableError);
}

TEST(Benchmark, OrderMattersOnlyWithOrderBy) {
  BenchmarkCase c;
  c.id = "x";
  c.user_input = "modalities";
  c.expected_result = sql::ResultTable{{"m"},
                                       {ColumnType::Text},
                                       {{Value(std::string("SEG"))}, {Value(std::string("MR"))}, {Value(std::string("CT"))}}};
  llm::ScriptedProvider unordered({"```\nSELECT DISTINCT Modality FROM dicom_all\n```"});
  EXPECT_EQ(judge_case(c, run_pipeline("m", catalog(), unordered, {}), catalog()), Judgment::Correct);
  llm::ScriptedProvider ordered({"```\nSELECT DISTINCT Modality FROM dicom_all ORDER BY Modality\n```"});
  EXPECT_EQ(judge_case(c, run_pipeline("m", catalog(), ordered, {}), catalog()), Judgment::Incorrect);
}

TEST(Benchmark, ReplayFixtureReport) {
  testutil::TempDir out;
  auto provider = llm::ReplayProvider::from_file(testutil::fixture("replay.jsonl"));
  auto run = run_benchmark_cases(load_benchmark(testutil::fixture("benchmark.jsonl")), catalog(), provider, {},
                                 out.path());
  const auto& r = run.report;
  EXPECT_EQ(r.n, 20u);
  EXPECT_EQ(r.correct, 14u);
  EXPECT_NEAR(r.accuracy, 0.70, 1e-12);
  EXPECT_NEAR(r.f1, 28.0 / 34.0, 1e-12);
  ASSERT_EQ(run.transcripts.size(), 20u);

  // cd-07 runs out of attempts; every other case succeeds
  std::size_t exhausted = 0;
  for (const auto& c : r.cases) {
    if (c.outcome == "ExhaustedAttempts") {
      ++exhausted;
      EXPECT_EQ(c.id, "cd-07");
      EXPECT_EQ(c.attempts, 10);
    } else {
      EXPECT_EQ(c.outcome, "Success") << c.id;
    }
  }
  EXPECT_EQ(exhausted, 1u);

  // edit distances agree with the recursive-definition oracle
  ASSERT_EQ(r.edit_distances.size(), 6u);
  std::size_t k = 0;
  for (std::size_t i = 0; i < r.cases.size(); ++i) {
    const auto& c = r.cases[i];
    if (c.judgment != Judgment::Incorrect || !c.corrected_query) continue;
    ASSERT_TRUE(c.generated_query);
    EXPECT_EQ(r.edit_distances[k++], oracle_distance(*c.generated_query, *c.corrected_query)) << c.id;
  }
  EXPECT_EQ(k, 6u);
  auto [mean, sd] = mean_std(r.edit_distances);
  EXPECT_NEAR(r.edit_mean, mean, 1e-9);
  EXPECT_NEAR(r.edit_std, sd, 1e-9);

  for (const char* f : {"report.json", "report.txt", "transcripts.jsonl"})
    EXPECT_TRUE(std::filesystem::exists(out.path() / f)) << f;
  auto doc = nlohmann::json::parse(slurp(out.path() / "report.json"));
  EXPECT_EQ(doc.at("n"), 20);
  EXPECT_EQ(doc.at("correct"), 14);
  std::istringstream lines(slurp(out.path() / "transcripts.jsonl"));
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(transcript_from_json(nlohmann::json::parse(line)), run.transcripts[count]);
    ++count;
  }
  EXPECT_EQ(count, 20u);
}

TEST(Benchmark, ReplayIsDeterministic) {
  auto provider = llm::ReplayProvider::from_file(testutil::fixture("replay.jsonl"));
  auto path = testutil::fixture("benchmark.jsonl");
  auto a = run_benchmark(path, catalog(), provider, {});
  auto b = run_benchmark(path, catalog(), provider, {});
  EXPECT_EQ(report_to_json(a).dump(), report_to_json(b).dump());
}

TEST(Benchmark, SingleCaseScripted) {
  const std::string jsonl =
      R"({"id":"t2","category":"cohort_discovery","user_input":"T2 brain MRI series","expected_result":)"
      R"({"columns":[{"name":"SeriesInstanceUID","type":"Text"}],"rows":[["1.3.6.1.4.1.14519.5.2.1.2007"],["1.3.6.1.4.1.14519.5.2.1.2009"]]}})";
  llm::ScriptedProvider p(
      {"```\nSELECT SeriesInstanceUID FROM dicom_all WHERE Modality = 'MR' AND REGEXP_CONTAINS(Sequence, r'T2')\n```",
       "```\nSELECT SeriesInstanceUID FROM dicom_all WHERE Modality = 'MR' AND "
       "REGEXP_CONTAINS(BodyPartExamined, r'(?i)brain') AND REGEXP_CONTAINS(SeriesDescription, r'(?i)t2')\n```"});
  auto run = run_benchmark_cases(parse_benchmark(jsonl), catalog(), p, {});
  EXPECT_EQ(run.report.correct, 1u);
  EXPECT_EQ(run.report.cases[0].attempts, 2);
  EXPECT_NE(render_report_text(run.report).find("t2"), std::string::npos);
}
