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

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cohortq/llm/chat.hpp"
#include "cohortq/llm/config.hpp"

namespace cohortq::llm {

/// Source of chat completions.  Implementations must be callable from many
/// threads at once; the caller owns the conversation.
class Provider {
 public:
  virtual ~Provider() = default;

  /// One assistant reply for `conversation`.  Called through
  /// generate_completion, which enforces the context budget first.
  virtual ChatMessage complete(const Conversation& conversation) const = 0;

  virtual std::string_view kind() const = 0;
  virtual std::size_t context_budget() const { return 16385; }
  virtual std::size_t max_response_tokens() const { return 512; }
};

/// Checks token_estimate + max_response_tokens against the provider's budget
/// (throwing ContextBudgetExceeded without calling it), then asks for a reply.
ChatMessage generate_completion(const Provider& provider, const Conversation& conversation);

/// Returns canned replies in order, one per call; ScriptExhausted afterwards.
class ScriptedProvider : public Provider {
 public:
  explicit ScriptedProvider(std::vector<std::string> script);

  ChatMessage complete(const Conversation& conversation) const override;
  std::string_view kind() const override { return "scripted"; }
  std::size_t context_budget() const override { return budget_; }

  void set_context_budget(std::size_t budget) { budget_ = budget; }
  std::size_t calls() const { return next_.load(); }

 private:
  std::vector<std::string> script_;
  mutable std::atomic<std::size_t> next_{0};
  std::size_t budget_ = 16385;
};

/// Offline provider backed by recorded replies keyed by user input.
///
/// File format: JSONL, one `{"input": "...", "responses": ["...", ...]}` per
/// line.  The reply chosen for a conversation is `responses[k]`, where the
/// matching input is the latest user message equal to a recorded input and
/// k counts the assistant messages after it.  Lookup is a pure function of
/// the conversation, so replay is order-independent and thread-safe.
class ReplayProvider : public Provider {
 public:
  static ReplayProvider from_jsonl(std::string_view text);
  static ReplayProvider from_file(const std::filesystem::path& path);

  ChatMessage complete(const Conversation& conversation) const override;
  std::string_view kind() const override { return "replay"; }

  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::vector<std::string>> entries_;
};

/// OpenAI-style chat-completions client over HTTP(S).
class HttpProvider : public Provider {
 public:
  explicit HttpProvider(ProviderConfig config);

  ChatMessage complete(const Conversation& conversation) const override;
  std::string_view kind() const override { return "http"; }
  std::size_t context_budget() const override { return config_.context_tokens; }
  std::size_t max_response_tokens() const override { return config_.max_response_tokens; }

  const ProviderConfig& config() const { return config_; }

  /// Request body for `conversation` (no credentials).
  std::string request_body(const Conversation& conversation) const;

 private:
  ProviderConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

/// Reads the assistant content out of a chat-completions response body.
std::string parse_completion_body(std::string_view body);

}  // namespace cohortq::llm
