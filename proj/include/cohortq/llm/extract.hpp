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

#include "cohortq/llm/chat.hpp"

namespace cohortq::llm {

struct Delimiters {
  std::string open = "```";
  std::string close = "```";

  bool operator==(const Delimiters&) const = default;
};

/// Pulls the query out of a model reply.
///
/// Returns the trimmed text between the first `open` token and the next
/// `close` token.  When `open` is a code fence, a one-word language tag on
/// the fence line (```sql) is skipped.  If neither token occurs and the
/// trimmed reply starts with SELECT, the whole reply is returned unless
/// `strict` is set.  Throws ExtractionError otherwise.
std::string extract_query(const ChatMessage& response, const Delimiters& delimiters, bool strict = false);

std::string trim(std::string_view text);

}  // namespace cohortq::llm
