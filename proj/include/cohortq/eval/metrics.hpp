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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cohortq::eval {

enum class Judgment { Correct, Incorrect };
enum class Category { InformationExtraction, CohortDiscovery };

std::string_view to_string(Judgment judgment);
std::optional<Judgment> parse_judgment(std::string_view name);
std::string_view to_string(Category category);
std::optional<Category> parse_category(std::string_view name);

/// Verdict for one benchmark case plus what is needed to report on it.
struct CaseJudgment {
  std::string id;
  Category category = Category::InformationExtraction;
  Judgment judgment = Judgment::Incorrect;
  std::string outcome;  // pipeline outcome name; empty for synthetic input
  int attempts = 0;
  std::optional<std::string> generated_query;
  std::optional<std::string> corrected_query;

  bool operator==(const CaseJudgment&) const = default;
};

/// (generated, expert-corrected) query of an incorrect case.
struct IncorrectPair {
  std::string generated;
  std::string corrected;
};

struct CategoryCounts {
  std::size_t n = 0;
  std::size_t correct = 0;
  bool operator==(const CategoryCounts&) const = default;
};

struct Summary {
  double mean = 0.0;
  double std = 0.0;  // sample (n-1) standard deviation; 0 when n < 2
};

/// Mean and sample standard deviation.
Summary summarize(const std::vector<std::size_t>& values);

struct EvalReport {
  std::size_t n = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  double f1 = 0.0;
  std::map<std::string, CategoryCounts> per_category;
  std::vector<std::size_t> edit_distances;
  double edit_mean = 0.0;
  double edit_std = 0.0;
  /// Same statistics after collapsing whitespace runs in both queries.
  std::vector<std::size_t> edit_distances_collapsed;
  double edit_mean_collapsed = 0.0;
  double edit_std_collapsed = 0.0;
  std::vector<CaseJudgment> cases;

  bool operator==(const EvalReport&) const = default;
};

/// accuracy = C/n, f1 = 2C/(2C + W) with W = n - C; edit statistics over
/// `incorrect_pairs`.  Throws std::invalid_argument on empty judgments.
EvalReport compute_metrics(const std::vector<CaseJudgment>& judgments,
                           const std::vector<IncorrectPair>& incorrect_pairs);

nlohmann::ordered_json report_to_json(const EvalReport& report);
/// Fixed-width table of cases followed by the aggregate lines.
std::string render_report_text(const EvalReport& report);

}  // namespace cohortq::eval
