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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohortq/catalog.hpp"
#include "cohortq/llm/chat.hpp"
#include "cohortq/llm/prompt.hpp"
#include "cohortq/llm/provider.hpp"
#include "cohortq/sql/error.hpp"
#include "cohortq/sql/evaluator.hpp"

namespace cohortq {

/// Why an attempt failed.  `formatted` is the exact text that was fed back
/// to the model in the next correction prompt.
struct AttemptError {
  std::string kind;   // a sql::ErrorKind name, "ExtractionError" or "ProviderError"
  std::string group;  // Syntax | Resource | Extraction | Provider
  std::string message;
  std::string formatted;
  std::optional<sql::QueryError> query_error;

  bool operator==(const AttemptError&) const = default;
};

struct Attempt {
  int index = 1;  // 1-based
  /// Messages sent to the provider for this attempt.
  std::vector<llm::ChatMessage> prompt;
  std::string raw_response;
  std::optional<std::string> extracted_query;
  std::optional<AttemptError> error;
  std::optional<sql::ResultTable> result;
  double elapsed_ms = 0.0;

  bool operator==(const Attempt&) const = default;
};

enum class Outcome { Success, ExhaustedAttempts, ProviderFailure };

std::string_view to_string(Outcome outcome);
std::optional<Outcome> parse_outcome(std::string_view name);

struct CorrectionTranscript {
  std::string user_input;
  std::vector<Attempt> attempts;
  Outcome outcome = Outcome::ExhaustedAttempts;
  std::optional<sql::ResultTable> final_result;
  /// Query that produced final_result.
  std::optional<std::string> final_query;
  /// Set when outcome is ProviderFailure.
  std::optional<std::string> provider_error;

  /// Query of the last attempt that had one, successful or not.
  std::optional<std::string> last_query() const;

  bool operator==(const CorrectionTranscript&) const = default;
};

struct PipelineConfig {
  int max_attempts = 10;
  bool strict_extraction = false;
  std::size_t max_result_rows = 100000;
  llm::Delimiters delimiters;
  /// Rules rendered into the system prompt; defaults when unset.
  std::optional<llm::GroundingRules> rules;
};

/// User message asking the model to repair a failed attempt.  Embeds the
/// failed query when one was extracted and the verbatim error text.
llm::ChatMessage build_correction_prompt(const std::optional<std::string>& failed_query, std::string_view error_text,
                                         const llm::Delimiters& delimiters = {});

/// System prompt for the catalog's first table.
llm::ChatMessage system_prompt_for(const Catalog& catalog, const PipelineConfig& config);

/// Generate, extract, execute; on failure feed the error back and retry, up
/// to config.max_attempts.  Query and extraction failures are recorded in
/// the transcript; provider failures end the run with ProviderFailure.
///
/// When `session` is given the run continues that conversation, and on
/// completion the user input and final reply are appended to it.
CorrectionTranscript run_pipeline(std::string_view user_input, const Catalog& catalog, const llm::Provider& provider,
                                  const PipelineConfig& config, llm::Conversation* session = nullptr);

}  // namespace cohortq
