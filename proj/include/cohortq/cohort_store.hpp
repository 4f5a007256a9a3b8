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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohortq/pipeline.hpp"
#include "cohortq/sql/evaluator.hpp"

namespace cohortq {

enum class ExportFormat { Csv, Jsonl };

std::optional<ExportFormat> parse_export_format(std::string_view name);

/// CSV: header row, CRLF line endings, RFC 4180 quoting.  Null is an empty
/// unquoted field; an empty string is written as "".
/// JSONL: one object per row keyed by column name, typed values, Null as null.
std::string export_table(const sql::ResultTable& table, ExportFormat format);

/// Reads CSV written by export_table back into a typed table.
sql::ResultTable import_csv(std::string_view csv, const std::vector<ColumnType>& types);

class NotSuccessfulError : public Error {
 public:
  using Error::Error;
};

struct CohortManifest {
  std::string cohort_id;
  std::string created_at;  // ISO 8601 UTC
  std::string user_input;
  std::string final_query;
  std::size_t row_count = 0;
  std::vector<std::string> column_names;
  std::vector<ColumnType> column_types;
  std::string source_catalog;  // catalog content digest

  bool operator==(const CohortManifest&) const = default;
};

std::string manifest_to_json(const CohortManifest& manifest);
CohortManifest manifest_from_json(std::string_view text);

/// 26-character ULID: 48-bit millisecond timestamp then 80 random bits in
/// Crockford base32.  Ids from one process are strictly increasing.
std::string new_cohort_id();

/// Writes store_dir/<cohort_id>/{manifest.json,table.csv}.  Throws
/// NotSuccessfulError unless transcript.outcome is Success, StorageError on
/// I/O failure or when the cohort directory already exists.
CohortManifest materialize_cohort(const CorrectionTranscript& transcript, const std::filesystem::path& store_dir,
                                  const std::string& catalog_digest);

/// Read access to a store directory.
class CohortStore {
 public:
  explicit CohortStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  std::optional<CohortManifest> manifest(std::string_view cohort_id) const;
  std::optional<sql::ResultTable> table(std::string_view cohort_id) const;
  /// Manifests sorted by cohort id (creation order).
  std::vector<CohortManifest> list() const;

 private:
  std::filesystem::path dir_;
};

}  // namespace cohortq
