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
#include <filesystem>
#include <string>
#include <string_view>

#include "cohortq/llm/extract.hpp"

namespace cohortq::llm {

/// Chat-completion endpoint settings.  The API key itself is never held
/// here, only the name of the environment variable that supplies it.
struct ProviderConfig {
  std::string endpoint_url = "https://api.openai.com/v1/chat/completions";
  std::string model_name = "gpt-3.5-turbo";
  std::string api_key_env_var = "OPENAI_API_KEY";
  double temperature = 0.0;
  double timeout_s = 60.0;
  std::size_t max_response_tokens = 512;
  std::size_t context_tokens = 16385;
  int max_retries = 0;
};

struct AppConfig {
  ProviderConfig provider;
  Delimiters delimiters;
  bool strict_extraction = false;
  int max_attempts = 10;
  std::size_t max_result_rows = 100000;
};

/// Parses the JSON config document.  Missing fields keep their defaults.
/// Throws cohortq::Error on malformed input or a field named "api_key".
AppConfig parse_config(std::string_view json_text);
AppConfig load_config(const std::filesystem::path& path);

/// JSON rendering of the config (contains the env var name, never a key).
std::string config_to_json(const AppConfig& config);

}  // namespace cohortq::llm
