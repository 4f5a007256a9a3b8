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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohortq/errors.hpp"

namespace cohortq::llm {

enum class Role { System, User, Assistant };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view name);

struct ChatMessage {
  Role role = Role::User;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

/// Throws std::invalid_argument when `content` is empty.
ChatMessage make_message(Role role, std::string content);

/// ceil(code points / 4).
std::size_t estimate_tokens(std::string_view text);

/// Ordered chat history starting with a system message.  The token estimate
/// is the sum of per-message estimates, so it never decreases on append.
class Conversation {
 public:
  explicit Conversation(ChatMessage system);

  void append(ChatMessage message);
  const std::vector<ChatMessage>& messages() const { return messages_; }
  std::size_t token_estimate() const { return tokens_; }

  bool operator==(const Conversation&) const = default;

 private:
  std::vector<ChatMessage> messages_;
  std::size_t tokens_ = 0;
};

class ProviderError : public Error {
 public:
  using Error::Error;
};

class ProviderHttpError : public ProviderError {
 public:
  ProviderHttpError(int status, std::string body_excerpt);
  int status() const { return status_; }
  const std::string& body_excerpt() const { return body_excerpt_; }

 private:
  int status_;
  std::string body_excerpt_;
};

class ProviderTimeout : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

class ContextBudgetExceeded : public ProviderError {
 public:
  ContextBudgetExceeded(std::size_t needed, std::size_t budget);
};

class ScriptExhausted : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

class ExtractionError : public Error {
 public:
  ExtractionError(std::string message, std::string raw_response)
      : Error(std::move(message)), raw_response_(std::move(raw_response)) {}
  const std::string& raw_response() const { return raw_response_; }

 private:
  std::string raw_response_;
};

}  // namespace cohortq::llm
