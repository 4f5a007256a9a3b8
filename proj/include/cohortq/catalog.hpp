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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cohortq/errors.hpp"
#include "cohortq/value.hpp"

namespace cohortq {

struct ColumnSchema {
  std::string name;
  ColumnType type = ColumnType::Text;
  bool nullable = true;

  bool operator==(const ColumnSchema&) const = default;
};

struct TableSchema {
  std::string table_name;
  std::vector<ColumnSchema> columns;
  /// Fully-qualified dotted names that also resolve to this table.
  std::vector<std::string> aliases;
  /// Columns whose non-null values must be unique across the table.
  std::vector<std::string> unique_columns;

  /// Case-insensitive column lookup.
  std::optional<std::size_t> find_column(std::string_view name) const;

  std::vector<std::string> column_names() const;

  /// Throws SchemaParseError when the schema breaks a structural invariant.
  void validate() const;

  bool operator==(const TableSchema&) const = default;
};

using MetadataRow = std::vector<Value>;

struct Table {
  TableSchema schema;
  std::vector<MetadataRow> rows;
};

/// Parses a schema descriptor document (JSON).
TableSchema parse_schema_descriptor(std::string_view json_text);

/// Immutable set of metadata tables addressable by name or alias.
///
/// Lookups are case-insensitive on the final dotted segment and ignore
/// backtick quoting, so `bigquery-public-data.idc_current.DICOM_ALL` and
/// `dicom_all` both resolve when the former is a registered alias.
class Catalog {
 public:
  Catalog() = default;

  /// Loads one table from a schema descriptor and a CSV or JSONL data file.
  /// The data format is chosen by extension (.csv, .jsonl, .json) and falls
  /// back to sniffing the first non-blank character.
  static Catalog load(const std::filesystem::path& schema_file,
                      const std::filesystem::path& data_file);

  /// Builds a catalog from in-memory tables, validating every row.
  static Catalog from_tables(std::vector<Table> tables, std::string digest = {});

  const TableSchema& resolve_table(std::string_view name) const;
  const Table& table(std::string_view name) const;
  std::span<const MetadataRow> scan_rows(std::string_view name) const;

  const std::vector<Table>& tables() const { return tables_; }
  bool empty() const { return tables_.empty(); }

  /// SHA-256 content digest of the files the catalog was loaded from.
  const std::string& digest() const { return digest_; }

  /// All names (table names and aliases) that resolve.
  std::vector<std::string> known_names() const;

 private:
  void index_tables();
  const Table* find(std::string_view name) const;

  std::vector<Table> tables_;
  std::map<std::string, std::size_t> index_;
  std::string digest_;
};

/// Validates `rows` against `schema` (types, nullability, uniqueness).
void validate_rows(const TableSchema& schema, const std::vector<MetadataRow>& rows);

std::vector<MetadataRow> parse_jsonl_rows(const TableSchema& schema, std::string_view text);
std::vector<MetadataRow> parse_csv_rows(const TableSchema& schema, std::string_view text);

/// One JSON object per row, keys in schema order, Date cells as YYYY-MM-DD.
std::string table_to_jsonl(const Table& table);

/// Canonical byte serialization (schema descriptor followed by JSONL rows).
std::string canonical_serialization(const Catalog& catalog);

/// Splits RFC 4180 CSV text into records of fields.  Quoted-ness of each
/// field is reported so callers can tell `""` from an empty field.
struct CsvField {
  std::string text;
  bool quoted = false;
};
std::vector<std::vector<CsvField>> parse_csv(std::string_view text);

std::string lowercase(std::string_view text);
bool iequals(std::string_view a, std::string_view b);

}  // namespace cohortq
