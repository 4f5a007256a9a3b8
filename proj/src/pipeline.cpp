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

#include "cohortq/pipeline.hpp"

#include <chrono>
#include <stdexcept>

#include "cohortq/llm/extract.hpp"
#include "cohortq/logging.hpp"
#include "cohortq/sql/parser.hpp"

namespace cohortq {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Success: return "Success";
    case Outcome::ExhaustedAttempts: return "ExhaustedAttempts";
    case Outcome::ProviderFailure: return "ProviderFailure";
  }
  return "ExhaustedAttempts";
}

std::optional<Outcome> parse_outcome(std::string_view name) {
  for (auto o : {Outcome::Success, Outcome::ExhaustedAttempts, Outcome::ProviderFailure})
    if (to_string(o) == name) return o;
  return std::nullopt;
}

std::optional<std::string> CorrectionTranscript::last_query() const {
  for (auto it = attempts.rbegin(); it != attempts.rend(); ++it)
    if (it->extracted_query) return it->extracted_query;
  return std::nullopt;
}

llm::ChatMessage build_correction_prompt(const std::optional<std::string>& failed_query, std::string_view error_text,
                                         const llm::Delimiters& delimiters) {
  if (error_text.empty()) throw std::invalid_argument("correction prompt needs the error text");
  std::string m;
  if (failed_query) {
    m += "The query you generated failed to execute.\n\nQuery:\n";
    m += *failed_query;
    m += "\n\nError:\n";
    m += error_text;
    if (m.back() != '\n') m += '\n';
    m += "\nCorrect the query using only the table and columns listed in the instructions. ";
  } else {
    m += "I could not find a query in your reply.\n\nError:\n";
    m += error_text;
    if (m.back() != '\n') m += '\n';
    m += "\n";
  }
  m += "Reply with exactly one SQL query enclosed within " + delimiters.open + " and " + delimiters.close +
       ", without explanations.";
  return llm::make_message(llm::Role::User, std::move(m));
}

llm::ChatMessage system_prompt_for(const Catalog& catalog, const PipelineConfig& config) {
  if (catalog.empty()) throw Error("catalog has no tables");
  llm::GroundingRules rules = config.rules ? *config.rules : llm::GroundingRules::defaults(config.delimiters);
  rules.delimiters = config.delimiters;
  return llm::build_system_prompt(catalog.tables().front().schema, rules);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Keeps the system prompt, the original question, the last failed reply and
// the new correction.
llm::Conversation truncated(const llm::Conversation& full, std::size_t question_index,
                            const llm::ChatMessage& last_reply, const llm::ChatMessage& correction) {
  llm::Conversation out(full.messages().front());
  out.append(full.messages().at(question_index));
  out.append(last_reply);
  out.append(correction);
  return out;
}

}  // namespace

CorrectionTranscript run_pipeline(std::string_view user_input, const Catalog& catalog, const llm::Provider& provider,
                                  const PipelineConfig& config, llm::Conversation* session) {
  if (user_input.empty()) throw std::invalid_argument("user input must not be empty");
  if (config.max_attempts < 1) throw std::invalid_argument("max_attempts must be at least 1");

  CorrectionTranscript transcript;
  transcript.user_input = std::string(user_input);

  llm::Conversation conversation = session ? *session : llm::Conversation(system_prompt_for(catalog, config));
  conversation.append(llm::make_message(llm::Role::User, std::string(user_input)));
  const std::size_t question_index = conversation.messages().size() - 1;

  const sql::EvalOptions eval_options{config.max_result_rows, true};

  for (int index = 1; index <= config.max_attempts; ++index) {
    Attempt attempt;
    attempt.index = index;
    attempt.prompt = conversation.messages();
    const auto start = Clock::now();

    llm::ChatMessage reply;
    try {
      reply = llm::generate_completion(provider, conversation);
    } catch (const llm::ProviderError& e) {
      attempt.error = AttemptError{"ProviderError", "Provider", e.what(), e.what(), std::nullopt};
      attempt.elapsed_ms = ms_since(start);
      transcript.attempts.push_back(std::move(attempt));
      transcript.outcome = Outcome::ProviderFailure;
      transcript.provider_error = e.what();
      log(LogLevel::Warn, "provider failure on attempt " + std::to_string(index) + ": " + e.what());
      return transcript;
    }
    attempt.raw_response = reply.content;

    try {
      attempt.extracted_query = llm::extract_query(reply, config.delimiters, config.strict_extraction);
      attempt.result = sql::run_query(*attempt.extracted_query, catalog, eval_options);
    } catch (const llm::ExtractionError& e) {
      std::string text = std::string("ExtractionError: ") + e.what() + "\n";
      attempt.error = AttemptError{"ExtractionError", "Extraction", e.what(), text, std::nullopt};
    } catch (const sql::QueryException& e) {
      const auto& qe = e.error();
      attempt.error = AttemptError{std::string(sql::to_string(qe.kind)),
                                   std::string(sql::to_string(sql::classify_error(qe))), qe.message,
                                   sql::format_error(qe), qe};
    }
    attempt.elapsed_ms = ms_since(start);
    log(LogLevel::Debug, "attempt " + std::to_string(index) + "/" + std::to_string(config.max_attempts) + ": " +
                             (attempt.result ? std::string("ok") : attempt.error->kind));

    if (attempt.result) {
      transcript.outcome = Outcome::Success;
      transcript.final_result = attempt.result;
      transcript.final_query = attempt.extracted_query;
      transcript.attempts.push_back(std::move(attempt));
      if (session) {
        session->append(llm::make_message(llm::Role::User, std::string(user_input)));
        session->append(reply);
      }
      return transcript;
    }

    const AttemptError error = *attempt.error;
    const std::optional<std::string> failed_query = attempt.extracted_query;
    transcript.attempts.push_back(std::move(attempt));
    if (index == config.max_attempts) break;

    llm::ChatMessage correction = build_correction_prompt(failed_query, error.formatted, config.delimiters);
    const std::size_t projected = conversation.token_estimate() + llm::estimate_tokens(reply.content) +
                                  llm::estimate_tokens(correction.content) + provider.max_response_tokens();
    if (projected > provider.context_budget()) {
      conversation = truncated(conversation, question_index, reply, correction);
    } else {
      conversation.append(reply);
      conversation.append(correction);
    }
  }

  transcript.outcome = Outcome::ExhaustedAttempts;
  if (session) {
    session->append(llm::make_message(llm::Role::User, std::string(user_input)));
    session->append(llm::make_message(llm::Role::Assistant, transcript.attempts.back().raw_response));
  }
  return transcript;
}

}  // namespace cohortq
