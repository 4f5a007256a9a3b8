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

#include <string>

#include "cohortq/catalog.hpp"
#include "cohortq/llm/chat.hpp"
#include "cohortq/llm/extract.hpp"

namespace cohortq::llm {

/// The four constraints rendered into every system prompt: what database to
/// target, answer tersely, wrap the query in delimiters, and prefer regular
/// expressions to exact string matches.
struct GroundingRules {
  std::string database_description;
  std::string specificity_rule;
  std::string regex_rule;
  Delimiters delimiters;

  static GroundingRules defaults(Delimiters delimiters = {});
};

/// Deterministic system message: schema listing (one "- name: Type" line per
/// column), the four rules, and a short summary of the SQL dialect.
ChatMessage build_system_prompt(const TableSchema& schema, const GroundingRules& rules);

}  // namespace cohortq::llm
