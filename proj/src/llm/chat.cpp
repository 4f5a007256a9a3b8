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

#include "cohortq/llm/chat.hpp"

#include <stdexcept>

#include "cohortq/sql/regex.hpp"

namespace cohortq::llm {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "user";
}

std::optional<Role> parse_role(std::string_view name) {
  if (name == "system") return Role::System;
  if (name == "user") return Role::User;
  if (name == "assistant") return Role::Assistant;
  return std::nullopt;
}

ChatMessage make_message(Role role, std::string content) {
  if (content.empty()) throw std::invalid_argument("chat message content must not be empty");
  return ChatMessage{role, std::move(content)};
}

std::size_t estimate_tokens(std::string_view text) {
  const std::size_t chars = sql::decode_utf8(text).size();
  return (chars + 3) / 4;
}

Conversation::Conversation(ChatMessage system) {
  if (system.role != Role::System) throw std::invalid_argument("conversation must start with a system message");
  append(std::move(system));
}

void Conversation::append(ChatMessage message) {
  if (message.content.empty()) throw std::invalid_argument("chat message content must not be empty");
  if (!messages_.empty() && message.role == Role::System)
    throw std::invalid_argument("only the first message may have the system role");
  tokens_ += estimate_tokens(message.content);
  messages_.push_back(std::move(message));
}

ProviderHttpError::ProviderHttpError(int status, std::string body_excerpt)
    : ProviderError("provider returned HTTP " + std::to_string(status) +
                    (body_excerpt.empty() ? "" : ": " + body_excerpt)),
      status_(status),
      body_excerpt_(std::move(body_excerpt)) {}

ContextBudgetExceeded::ContextBudgetExceeded(std::size_t needed, std::size_t budget)
    : ProviderError("conversation needs " + std::to_string(needed) + " tokens but the context budget is " +
                    std::to_string(budget)) {}

}  // namespace cohortq::llm
