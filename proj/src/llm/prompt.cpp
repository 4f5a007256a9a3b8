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

#include "cohortq/llm/prompt.hpp"

namespace cohortq::llm {

GroundingRules GroundingRules::defaults(Delimiters delimiters) {
  GroundingRules rules;
  rules.database_description =
      "It contains DICOM metadata for all collections hosted by the Imaging Data Commons, "
      "one row per DICOM instance.";
  rules.specificity_rule =
      "Queries should be as specific as possible without providing explanations behind responses. "
      "Reply with the query only.";
  rules.regex_rule =
      "Queries should utilize regular expressions in queries to prevent exact matches on free-text "
      "fields, for example REGEXP_CONTAINS(LOWER(BodyPartExamined), r'brain') instead of "
      "BodyPartExamined = 'BRAIN'.";
  rules.delimiters = std::move(delimiters);
  return rules;
}

ChatMessage build_system_prompt(const TableSchema& schema, const GroundingRules& rules) {
  std::string p;
  p += "You translate questions about medical imaging data into SQL queries.\n\n";
  p += "Rule 1. Query the public metadata table " + schema.table_name;
  if (!schema.aliases.empty()) {
    p += " (also addressable as ";
    for (std::size_t i = 0; i < schema.aliases.size(); ++i) {
      if (i) p += ", ";
      p += "`" + schema.aliases[i] + "`";
    }
    p += ")";
  }
  p += ". " + rules.database_description + " Its columns are:\n";
  for (const auto& col : schema.columns) p += "- " + col.name + ": " + std::string(to_string(col.type)) + "\n";
  p += "\nRule 2. " + rules.specificity_rule + "\n";
  p += "\nRule 3. Queries must be generated enclosed within fixed delimiters: write " + rules.delimiters.open +
       " on the line before the query and " + rules.delimiters.close + " on the line after it.\n";
  p += "\nRule 4. " + rules.regex_rule + "\n";
  p += "\nDialect: one SELECT statement over the table above, no JOINs or subqueries. "
       "Available: SELECT [DISTINCT], COUNT(*), COUNT(DISTINCT column), LOWER, UPPER, "
       "WHERE with = != < <= > >=, LIKE, IN, IS NULL, AND, OR, NOT, "
       "REGEXP_CONTAINS(text, r'pattern'), GROUP BY, ORDER BY ... ASC|DESC and LIMIT. "
       "String literals use single quotes; dates are written 'YYYY-MM-DD'.\n";
  return make_message(Role::System, std::move(p));
}

}  // namespace cohortq::llm
