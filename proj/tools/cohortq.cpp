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

// cohortq: ask questions of a DICOM metadata catalog in natural language.
//   cohortq ask "How many MR series are there?"
//   cohortq repl
//   cohortq serve --port 8080
//   cohortq eval --benchmark fixtures/benchmark.jsonl --provider replay --replay fixtures/replay.jsonl --out out/

#include <algorithm>
#include <csignal>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cohortq/catalog.hpp"
#include "cohortq/cohort_store.hpp"
#include "cohortq/digest.hpp"
#include "cohortq/eval/benchmark.hpp"
#include "cohortq/llm/config.hpp"
#include "cohortq/llm/provider.hpp"
#include "cohortq/logging.hpp"
#include "cohortq/pipeline.hpp"
#include "cohortq/service/api.hpp"
#include "cohortq/transcript_json.hpp"
#include "httplib.h"
#include "json.hpp"

namespace {

using namespace cohortq;

struct Options {
  std::string schema_file = "fixtures/dicom_all.schema.json";
  std::string data_file = "fixtures/dicom_all.jsonl";
  std::string config_file;
  std::string provider = "http";
  std::string replay_file;
  std::string script_file;
  std::string store_dir = "cohorts";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string ui_dir;
  std::string benchmark_file;
  std::string out_dir;
  std::string input;
  bool json_output = false;
  bool verbose = false;
};

llm::AppConfig load_app_config(const Options& o) {
  return o.config_file.empty() ? llm::AppConfig{} : llm::load_config(o.config_file);
}

PipelineConfig pipeline_config(const llm::AppConfig& app) {
  PipelineConfig pc;
  pc.max_attempts = app.max_attempts;
  pc.strict_extraction = app.strict_extraction;
  pc.max_result_rows = app.max_result_rows;
  pc.delimiters = app.delimiters;
  return pc;
}

std::unique_ptr<llm::Provider> make_provider(const Options& o, const llm::AppConfig& app) {
  if (o.provider == "replay") {
    if (o.replay_file.empty()) throw Error("--provider replay needs --replay <file>");
    return std::make_unique<llm::ReplayProvider>(llm::ReplayProvider::from_file(o.replay_file));
  }
  if (o.provider == "scripted") {
    if (o.script_file.empty()) throw Error("--provider scripted needs --script <file>");
    auto doc = nlohmann::json::parse(read_file(o.script_file));
    return std::make_unique<llm::ScriptedProvider>(doc.get<std::vector<std::string>>());
  }
  if (o.provider == "http") return std::make_unique<llm::HttpProvider>(app.provider);
  throw Error("unknown provider '" + o.provider + "' (expected scripted, replay or http)");
}

std::string render_table(const sql::ResultTable& t, std::size_t max_rows = 50) {
  std::vector<std::size_t> width(t.column_names.size());
  for (std::size_t i = 0; i < width.size(); ++i) width[i] = t.column_names[i].size();
  const std::size_t shown = std::min(max_rows, t.rows.size());
  for (std::size_t r = 0; r < shown; ++r)
    for (std::size_t i = 0; i < width.size(); ++i)
      width[i] = std::max(width[i], t.rows[r][i].is_null() ? 4 : t.rows[r][i].to_display().size());
  auto cell = [](std::string s, std::size_t w) { return s + std::string(w - std::min(w, s.size()), ' '); };
  std::string out;
  for (std::size_t i = 0; i < width.size(); ++i) out += (i ? " | " : "") + cell(t.column_names[i], width[i]);
  out += "\n";
  for (std::size_t i = 0; i < width.size(); ++i) out += (i ? "-+-" : "") + std::string(width[i], '-');
  out += "\n";
  for (std::size_t r = 0; r < shown; ++r) {
    for (std::size_t i = 0; i < width.size(); ++i) {
      const auto& v = t.rows[r][i];
      out += (i ? " | " : "") + cell(v.is_null() ? "NULL" : v.to_display(), width[i]);
    }
    out += "\n";
  }
  if (shown < t.rows.size()) out += "... " + std::to_string(t.rows.size() - shown) + " more rows\n";
  out += "(" + std::to_string(t.rows.size()) + " rows)\n";
  return out;
}

void print_transcript(const CorrectionTranscript& t, int max_attempts) {
  for (const auto& a : t.attempts) {
    std::cout << "attempt " << a.index << "/" << max_attempts << "\n";
    if (a.extracted_query) std::cout << "  query: " << *a.extracted_query << "\n";
    if (a.error) {
      std::string text = a.error->formatted;
      while (!text.empty() && text.back() == '\n') text.pop_back();
      std::string indented;
      for (char c : text) {
        indented += c;
        if (c == '\n') indented += "    ";
      }
      std::cout << "  error:\n    " << indented << "\n";
    }
  }
  std::cout << "outcome: " << to_string(t.outcome) << "\n";
  if (t.provider_error) std::cout << "provider error: " << *t.provider_error << "\n";
  if (t.final_result) std::cout << "\n" << render_table(*t.final_result);
}

int cmd_ask(const Options& o) {
  auto app = load_app_config(o);
  auto catalog = Catalog::load(o.schema_file, o.data_file);
  auto provider = make_provider(o, app);
  auto pc = pipeline_config(app);
  auto t = run_pipeline(o.input, catalog, *provider, pc);
  if (o.json_output)
    std::cout << to_json(t).dump(2) << "\n";
  else
    print_transcript(t, pc.max_attempts);
  if (t.outcome == Outcome::Success && t.final_result && t.final_result->row_count() > 0 && !o.store_dir.empty()) {
    auto m = materialize_cohort(t, o.store_dir, catalog.digest());
    if (!o.json_output) std::cout << "cohort: " << m.cohort_id << "\n";
  }
  return t.outcome == Outcome::Success ? 0 : t.outcome == Outcome::ProviderFailure ? 3 : 2;
}

int cmd_repl(const Options& o) {
  auto app = load_app_config(o);
  auto catalog = Catalog::load(o.schema_file, o.data_file);
  auto provider = make_provider(o, app);
  auto pc = pipeline_config(app);
  llm::Conversation session(system_prompt_for(catalog, pc));
  std::cout << "cohortq: " << catalog.tables().front().schema.table_name << " ("
            << catalog.tables().front().rows.size() << " rows). Type :quit to exit.\n";
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    if (line == ":quit" || line == ":q") break;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto t = run_pipeline(line, catalog, *provider, pc, &session);
    print_transcript(t, pc.max_attempts);
    if (t.outcome == Outcome::Success && t.final_result && t.final_result->row_count() > 0 && !o.store_dir.empty())
      std::cout << "cohort: " << materialize_cohort(t, o.store_dir, catalog.digest()).cohort_id << "\n";
  }
  return 0;
}

httplib::Server* g_server = nullptr;

int cmd_serve(const Options& o) {
  auto app = load_app_config(o);
  std::optional<Catalog> catalog;
  try {
    catalog = Catalog::load(o.schema_file, o.data_file);
  } catch (const Error& e) {
    // keep serving so /api/health can report the problem
    log(LogLevel::Error, std::string("catalog not loaded: ") + e.what());
  }
  auto provider = make_provider(o, app);
  service::ServiceOptions so;
  so.pipeline = pipeline_config(app);
  so.store_dir = o.store_dir;
  if (!o.ui_dir.empty()) so.ui_dir = o.ui_dir;
  service::ApiService api(catalog ? &*catalog : nullptr, *provider, so);
  httplib::Server server;
  api.mount(server);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  log(LogLevel::Info, "listening on http://" + o.host + ":" + std::to_string(o.port));
  if (!server.listen(o.host, o.port)) {
    log(LogLevel::Error, "cannot listen on " + o.host + ":" + std::to_string(o.port));
    return 1;
  }
  return 0;
}

int cmd_eval(const Options& o) {
  auto app = load_app_config(o);
  auto catalog = Catalog::load(o.schema_file, o.data_file);
  auto provider = make_provider(o, app);
  std::optional<std::filesystem::path> out;
  if (!o.out_dir.empty()) out = o.out_dir;
  auto report = eval::run_benchmark(o.benchmark_file, catalog, *provider, pipeline_config(app), out);
  std::cout << eval::render_report_text(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Natural-language cohort queries over a DICOM metadata catalog"};
  cli.require_subcommand(1);
  // global options may also follow the subcommand
  cli.fallthrough();
  Options o;
  cli.add_option("--catalog-schema", o.schema_file, "Schema descriptor (JSON)")->capture_default_str();
  cli.add_option("--catalog-data", o.data_file, "Catalog rows (JSONL or CSV)")->capture_default_str();
  cli.add_option("--config", o.config_file, "Provider/pipeline config (JSON)");
  cli.add_option("--provider", o.provider, "scripted | replay | http")
      ->check(CLI::IsMember({"scripted", "replay", "http"}))
      ->capture_default_str();
  cli.add_option("--replay", o.replay_file, "Replay file for --provider replay");
  cli.add_option("--script", o.script_file, "JSON array of replies for --provider scripted");
  cli.add_option("--store-dir", o.store_dir, "Cohort store directory")->capture_default_str();
  cli.add_flag("-v,--verbose", o.verbose, "Debug logging");

  auto* ask = cli.add_subcommand("ask", "Answer one question and print the transcript");
  ask->add_option("input", o.input, "Question")->required();
  ask->add_flag("--json", o.json_output, "Print the transcript as JSON");

  cli.add_subcommand("repl", "Interactive question loop sharing one conversation");

  auto* serve = cli.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--host", o.host)->capture_default_str();
  serve->add_option("--port", o.port)->capture_default_str();
  serve->add_option("--ui-dir", o.ui_dir, "Static console bundle served under /ui");

  auto* eval_cmd = cli.add_subcommand("eval", "Run a benchmark and write report.json / report.txt");
  eval_cmd->add_option("--benchmark", o.benchmark_file)->required();
  eval_cmd->add_option("--out", o.out_dir, "Report directory");

  CLI11_PARSE(cli, argc, argv);
  set_log_level(o.verbose ? LogLevel::Debug : LogLevel::Info);
  try {
    if (ask->parsed()) return cmd_ask(o);
    if (cli.got_subcommand("repl")) return cmd_repl(o);
    if (serve->parsed()) return cmd_serve(o);
    if (eval_cmd->parsed()) return cmd_eval(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
