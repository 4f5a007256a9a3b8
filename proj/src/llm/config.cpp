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

#include "cohortq/llm/config.hpp"

#include "cohortq/digest.hpp"
#include "json.hpp"

namespace cohortq::llm {

using nlohmann::json;

AppConfig parse_config(std::string_view json_text) {
  AppConfig cfg;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("config must be a JSON object");
  try {
    if (doc.contains("provider")) {
      const auto& p = doc.at("provider");
      if (p.contains("api_key"))
        throw Error("config must not contain an API key; set provider.api_key_env_var instead");
      auto& pc = cfg.provider;
      pc.endpoint_url = p.value("endpoint_url", pc.endpoint_url);
      pc.model_name = p.value("model_name", pc.model_name);
      pc.api_key_env_var = p.value("api_key_env_var", pc.api_key_env_var);
      pc.temperature = p.value("temperature", pc.temperature);
      pc.timeout_s = p.value("timeout_s", pc.timeout_s);
      pc.max_response_tokens = p.value("max_response_tokens", pc.max_response_tokens);
      pc.context_tokens = p.value("context_tokens", pc.context_tokens);
      pc.max_retries = p.value("max_retries", pc.max_retries);
    }
    if (doc.contains("delimiters")) {
      const auto& d = doc.at("delimiters");
      cfg.delimiters.open = d.value("open", cfg.delimiters.open);
      cfg.delimiters.close = d.value("close", cfg.delimiters.close);
    }
    cfg.strict_extraction = doc.value("strict_extraction", cfg.strict_extraction);
    cfg.max_attempts = doc.value("max_attempts", cfg.max_attempts);
    cfg.max_result_rows = doc.value("max_result_rows", cfg.max_result_rows);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed config: ") + e.what());
  }
  if (cfg.delimiters.open.empty() || cfg.delimiters.close.empty()) throw Error("delimiters must be non-empty");
  if (cfg.max_attempts < 1) throw Error("max_attempts must be at least 1");
  return cfg;
}

AppConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

std::string config_to_json(const AppConfig& config) {
  const auto& p = config.provider;
  json doc = {
      {"provider",
       {{"endpoint_url", p.endpoint_url},
        {"model_name", p.model_name},
        {"api_key_env_var", p.api_key_env_var},
        {"temperature", p.temperature},
        {"timeout_s", p.timeout_s},
        {"max_response_tokens", p.max_response_tokens},
        {"context_tokens", p.context_tokens},
        {"max_retries", p.max_retries}}},
      {"delimiters", {{"open", config.delimiters.open}, {"close", config.delimiters.close}}},
      {"strict_extraction", config.strict_extraction},
      {"max_attempts", config.max_attempts},
      {"max_result_rows", config.max_result_rows},
  };
  return doc.dump(2);
}

}  // namespace cohortq::llm
