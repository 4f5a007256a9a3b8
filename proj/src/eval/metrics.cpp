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

#include "cohortq/eval/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cohortq/eval/levenshtein.hpp"

namespace cohortq::eval {

std::string_view to_string(Judgment judgment) {
  return judgment == Judgment::Correct ? "correct" : "incorrect";
}

std::optional<Judgment> parse_judgment(std::string_view name) {
  if (name == "correct") return Judgment::Correct;
  if (name == "incorrect") return Judgment::Incorrect;
  return std::nullopt;
}

std::string_view to_string(Category category) {
  return category == Category::InformationExtraction ? "information_extraction" : "cohort_discovery";
}

std::optional<Category> parse_category(std::string_view name) {
  if (name == "information_extraction") return Category::InformationExtraction;
  if (name == "cohort_discovery") return Category::CohortDiscovery;
  return std::nullopt;
}

Summary summarize(const std::vector<std::size_t>& values) {
  Summary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (auto v : values) sum += static_cast<double>(v);
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return s;
  double sq = 0.0;
  for (auto v : values) {
    const double d = static_cast<double>(v) - s.mean;
    sq += d * d;
  }
  s.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  return s;
}

EvalReport compute_metrics(const std::vector<CaseJudgment>& judgments,
                           const std::vector<IncorrectPair>& incorrect_pairs) {
  if (judgments.empty()) throw std::invalid_argument("compute_metrics needs at least one judgment");
  EvalReport r;
  r.n = judgments.size();
  for (const auto& j : judgments) {
    auto& cat = r.per_category[std::string(to_string(j.category))];
    ++cat.n;
    if (j.judgment == Judgment::Correct) {
      ++r.correct;
      ++cat.correct;
    }
  }
  const double c = static_cast<double>(r.correct);
  const double w = static_cast<double>(r.n - r.correct);
  r.accuracy = c / static_cast<double>(r.n);
  r.f1 = r.correct == 0 ? 0.0 : 2.0 * c / (2.0 * c + w);

  std::vector<StringPair> raw, collapsed;
  for (const auto& p : incorrect_pairs) {
    raw.emplace_back(p.generated, p.corrected);
    collapsed.emplace_back(collapse_whitespace(p.generated), collapse_whitespace(p.corrected));
  }
  r.edit_distances = levenshtein_batch_serial(raw);
  r.edit_distances_collapsed = levenshtein_batch_serial(collapsed);
  const auto s = summarize(r.edit_distances);
  r.edit_mean = s.mean;
  r.edit_std = s.std;
  const auto sc = summarize(r.edit_distances_collapsed);
  r.edit_mean_collapsed = sc.mean;
  r.edit_std_collapsed = sc.std;
  r.cases = judgments;
  return r;
}

nlohmann::ordered_json report_to_json(const EvalReport& r) {
  using nlohmann::ordered_json;
  ordered_json per_cat = ordered_json::object();
  for (const auto& [name, counts] : r.per_category) per_cat[name] = {{"n", counts.n}, {"correct", counts.correct}};
  ordered_json cases = ordered_json::array();
  for (const auto& j : r.cases) {
    cases.push_back({{"id", j.id},
                     {"category", to_string(j.category)},
                     {"judgment", to_string(j.judgment)},
                     {"outcome", j.outcome},
                     {"attempts", j.attempts},
                     {"generated_query", j.generated_query ? ordered_json(*j.generated_query) : ordered_json()},
                     {"corrected_query", j.corrected_query ? ordered_json(*j.corrected_query) : ordered_json()}});
  }
  return {{"n", r.n},
          {"correct", r.correct},
          {"accuracy", r.accuracy},
          {"f1", r.f1},
          {"per_category", per_cat},
          {"edit_distances", r.edit_distances},
          {"edit_mean", r.edit_mean},
          {"edit_std", r.edit_std},
          {"edit_distances_collapsed", r.edit_distances_collapsed},
          {"edit_mean_collapsed", r.edit_mean_collapsed},
          {"edit_std_collapsed", r.edit_std_collapsed},
          {"cases", cases}};
}

std::string render_report_text(const EvalReport& r) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-24s %-18s %8s  %s\n", "id", "category", "outcome", "attempts",
                "judgment");
  out += line;
  out += std::string(76, '-') + "\n";
  for (const auto& j : r.cases) {
    std::snprintf(line, sizeof line, "%-12s %-24s %-18s %8d  %s\n", j.id.c_str(),
                  std::string(to_string(j.category)).c_str(), j.outcome.c_str(), j.attempts,
                  std::string(to_string(j.judgment)).c_str());
    out += line;
  }
  out += "\n";
  std::snprintf(line, sizeof line, "cases     %zu\ncorrect   %zu\naccuracy  %.3f\nf1        %.4f\n", r.n, r.correct,
                r.accuracy, r.f1);
  out += line;
  for (const auto& [name, counts] : r.per_category) {
    std::snprintf(line, sizeof line, "  %-24s %zu/%zu\n", name.c_str(), counts.correct, counts.n);
    out += line;
  }
  out += "edit distances:";
  for (auto d : r.edit_distances) out += " " + std::to_string(d);
  std::snprintf(line, sizeof line, "\nedit      %.2f +/- %.2f (whitespace-collapsed %.2f +/- %.2f)\n", r.edit_mean,
                r.edit_std, r.edit_mean_collapsed, r.edit_std_collapsed);
  out += line;
  return out;
}

}  // namespace cohortq::eval
