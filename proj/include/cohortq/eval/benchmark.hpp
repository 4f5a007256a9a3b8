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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohortq/catalog.hpp"
#include "cohortq/eval/metrics.hpp"
#include "cohortq/pipeline.hpp"

namespace cohortq::eval {

class BenchmarkParseError : public Error {
 public:
  using Error::Error;
};

class UnjudgeableError : public Error {
 public:
  using Error::Error;
};

struct BenchmarkCase {
  std::string id;
  std::string user_input;
  std::optional<sql::ResultTable> expected_result;
  std::optional<std::string> expected_query;
  std::optional<Judgment> human_label;
  std::optional<std::string> corrected_query;  // only with human_label = incorrect
  Category category = Category::InformationExtraction;
};

/// One case per non-blank line; field layout in docs/benchmark.md.  Throws
/// BenchmarkParseError on malformed input, an empty benchmark, duplicate
/// ids, or a case that breaks the label invariants.
std::vector<BenchmarkCase> parse_benchmark(std::string_view jsonl);
std::vector<BenchmarkCase> load_benchmark(const std::filesystem::path& path);

/// Row-for-row equality of values and column types (names are not
/// compared); rows are compared as multisets unless `ordered`.
bool tables_match(const sql::ResultTable& got, const sql::ResultTable& expected, bool ordered);

/// Human label wins.  Otherwise correct iff the run succeeded and its table
/// matches expected_result, in order when the final query has ORDER BY.
Judgment judge_case(const BenchmarkCase& c, const CorrectionTranscript& transcript, const Catalog& catalog);

struct BenchmarkRun {
  EvalReport report;
  std::vector<CorrectionTranscript> transcripts;
};

/// Runs every case through run_pipeline (in file order), judges and
/// aggregates.  When `out_dir` is set writes report.json, report.txt and
/// transcripts.jsonl there.
BenchmarkRun run_benchmark_cases(const std::vector<BenchmarkCase>& cases, const Catalog& catalog,
                                 const llm::Provider& provider, const PipelineConfig& config,
                                 const std::optional<std::filesystem::path>& out_dir = std::nullopt);

EvalReport run_benchmark(const std::filesystem::path& benchmark_file, const Catalog& catalog,
                         const llm::Provider& provider, const PipelineConfig& config,
                         const std::optional<std::filesystem::path>& out_dir = std::nullopt);

}  // namespace cohortq::eval
