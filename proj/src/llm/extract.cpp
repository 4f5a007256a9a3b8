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

#include "cohortq/llm/extract.hpp"

#include <cctype>

#include "cohortq/catalog.hpp"

namespace cohortq::llm {

std::string trim(std::string_view text) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };
  std::size_t b = 0, e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  return std::string(text.substr(b, e - b));
}

namespace {

// Length of a language tag directly after an opening fence: a single word
// followed by a line break.
std::size_t language_tag_length(std::string_view rest) {
  std::size_t i = 0;
  while (i < rest.size() && (std::isalnum(static_cast<unsigned char>(rest[i])) || rest[i] == '_' ||
                             rest[i] == '-' || rest[i] == '+'))
    ++i;
  if (i == 0) return 0;
  std::size_t j = i;
  while (j < rest.size() && (rest[j] == ' ' || rest[j] == '\t')) ++j;
  if (j < rest.size() && (rest[j] == '\n' || rest[j] == '\r')) return i;
  return 0;
}

}  // namespace

std::string extract_query(const ChatMessage& response, const Delimiters& delimiters, bool strict) {
  const std::string& text = response.content;
  const auto& open = delimiters.open;
  const auto& close = delimiters.close;
  auto first_open = text.find(open);
  if (first_open != std::string::npos) {
    std::size_t body = first_open + open.size();
    auto close_at = text.find(close, body);
    if (close_at == std::string::npos)
      throw ExtractionError("found the opening delimiter " + open + " but no closing delimiter " + close, text);
    // The innermost opening token before the close wins.
    std::string_view segment(text.data() + body, close_at - body);
    auto inner = segment.rfind(open);
    if (inner != std::string_view::npos) {
      body += inner + open.size();
      segment = std::string_view(text.data() + body, close_at - body);
    }
    if (open.rfind("```", 0) == 0) segment.remove_prefix(language_tag_length(segment));
    std::string query = trim(segment);
    if (query.empty()) throw ExtractionError("the delimited block is empty", text);
    return query;
  }
  if (text.find(close) != std::string::npos)
    throw ExtractionError("found the closing delimiter " + close + " without an opening delimiter " + open, text);
  std::string trimmed = trim(text);
  if (!strict && trimmed.size() >= 6 && iequals(std::string_view(trimmed).substr(0, 6), "select") &&
      (trimmed.size() == 6 || !std::isalnum(static_cast<unsigned char>(trimmed[6]))))
    return trimmed;
  throw ExtractionError("no query enclosed in " + open + " ... " + close + " delimiters was found", text);
}

}  // namespace cohortq::llm
