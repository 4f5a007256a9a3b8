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

#include "cohortq/llm/provider.hpp"

#include <stdexcept>

#include "cohortq/digest.hpp"
#include "json.hpp"

namespace cohortq::llm {

using nlohmann::json;

ChatMessage generate_completion(const Provider& provider, const Conversation& conversation) {
  const std::size_t needed = conversation.token_estimate() + provider.max_response_tokens();
  if (needed > provider.context_budget()) throw ContextBudgetExceeded(needed, provider.context_budget());
  ChatMessage reply = provider.complete(conversation);
  if (reply.role != Role::Assistant || reply.content.empty())
    throw ProviderError("provider returned an empty or non-assistant message");
  return reply;
}

ScriptedProvider::ScriptedProvider(std::vector<std::string> script) : script_(std::move(script)) {
  if (script_.empty()) throw std::invalid_argument("scripted provider needs at least one response");
}

ChatMessage ScriptedProvider::complete(const Conversation&) const {
  const std::size_t i = next_.fetch_add(1);
  if (i >= script_.size())
    throw ScriptExhausted("scripted provider exhausted after " + std::to_string(script_.size()) + " responses");
  return ChatMessage{Role::Assistant, script_[i]};
}

ReplayProvider ReplayProvider::from_jsonl(std::string_view text) {
  ReplayProvider provider;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      json obj = json::parse(line);
      auto input = obj.at("input").get<std::string>();
      auto responses = obj.at("responses").get<std::vector<std::string>>();
      if (responses.empty()) throw Error("empty responses");
      provider.entries_[input] = std::move(responses);
    } catch (const std::exception& e) {
      throw Error("replay file line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return provider;
}

ReplayProvider ReplayProvider::from_file(const std::filesystem::path& path) {
  return from_jsonl(read_file(path));
}

ChatMessage ReplayProvider::complete(const Conversation& conversation) const {
  const auto& messages = conversation.messages();
  std::size_t assistants_after = 0;
  for (std::size_t i = messages.size(); i-- > 0;) {
    const auto& m = messages[i];
    if (m.role == Role::Assistant) {
      ++assistants_after;
      continue;
    }
    if (m.role != Role::User) continue;
    auto it = entries_.find(m.content);
    if (it == entries_.end()) continue;
    if (assistants_after >= it->second.size())
      throw ScriptExhausted("replay responses for this input are exhausted after " +
                            std::to_string(it->second.size()) + " replies");
    return ChatMessage{Role::Assistant, it->second[assistants_after]};
  }
  throw ProviderError("no recorded reply for this conversation");
}

}  // namespace cohortq::llm
