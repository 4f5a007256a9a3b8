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

#include "cohortq/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <unordered_set>

#include "cohortq/digest.hpp"
#include "json.hpp"

namespace cohortq {

using nlohmann::json;

RowValidationError::RowValidationError(std::size_t row, std::string column, std::string reason)
    : Error("row " + std::to_string(row) + ", column " + column + ": " + reason),
      row_(row),
      column_(std::move(column)),
      reason_(std::move(reason)) {}

DuplicateKeyError::DuplicateKeyError(std::size_t row, std::string column, std::string key)
    : Error("row " + std::to_string(row) + ": duplicate " + column + " '" + key + "'"),
      row_(row),
      key_(std::move(key)) {}

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

UnknownTableError::UnknownTableError(std::string name, std::vector<std::string> known)
    : Error("unknown table '" + name + "'; known tables: " + join(known, ", ")),
      name_(std::move(name)),
      known_(std::move(known)) {}

std::string lowercase(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s[0]);
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// Key used for name lookup: backticks removed, final segment lowercased.
std::string lookup_key(std::string_view name) {
  std::string stripped;
  for (char c : name)
    if (c != '`') stripped.push_back(c);
  auto dot = stripped.rfind('.');
  if (dot == std::string::npos) return lowercase(stripped);
  return stripped.substr(0, dot + 1) + lowercase(std::string_view(stripped).substr(dot + 1));
}

}  // namespace

std::optional<std::size_t> TableSchema::find_column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (iequals(columns[i].name, name)) return i;
  return std::nullopt;
}

std::vector<std::string> TableSchema::column_names() const {
  std::vector<std::string> out;
  out.reserve(columns.size());
  for (const auto& c : columns) out.push_back(c.name);
  return out;
}

void TableSchema::validate() const {
  if (!is_identifier(table_name))
    throw SchemaParseError("table name '" + table_name + "' is not a valid identifier");
  if (columns.empty()) throw SchemaParseError("table '" + table_name + "' has no columns");
  std::set<std::string> seen;
  for (const auto& c : columns) {
    if (!is_identifier(c.name))
      throw SchemaParseError("column name '" + c.name + "' is not a valid identifier");
    if (!seen.insert(lowercase(c.name)).second)
      throw SchemaParseError("duplicate column name '" + c.name + "'");
  }
  for (const auto& u : unique_columns)
    if (!find_column(u)) throw SchemaParseError("unique column '" + u + "' is not in the schema");
  for (const auto& alias : aliases)
    if (alias.empty()) throw SchemaParseError("empty alias");
}

TableSchema parse_schema_descriptor(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw SchemaParseError(std::string("schema descriptor is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaParseError("schema descriptor must be a JSON object");
  TableSchema schema;
  try {
    schema.table_name = doc.at("name").get<std::string>();
    for (const auto& alias : doc.value("aliases", json::array()))
      schema.aliases.push_back(alias.get<std::string>());
    const auto& columns = doc.at("columns");
    if (!columns.is_array()) throw SchemaParseError("'columns' must be an array");
    for (const auto& col : columns) {
      ColumnSchema c;
      c.name = col.at("name").get<std::string>();
      const auto type_name = col.at("type").get<std::string>();
      auto type = parse_column_type(type_name);
      if (!type) throw SchemaParseError("column '" + c.name + "' has unknown type '" + type_name + "'");
      c.type = *type;
      c.nullable = col.value("nullable", true);
      schema.columns.push_back(std::move(c));
    }
    if (doc.contains("unique")) {
      for (const auto& u : doc.at("unique")) schema.unique_columns.push_back(u.get<std::string>());
    } else if (auto sop = schema.find_column("SOPInstanceUID")) {
      schema.unique_columns.push_back(schema.columns[*sop].name);
    }
  } catch (const json::exception& e) {
    throw SchemaParseError(std::string("malformed schema descriptor: ") + e.what());
  }
  schema.validate();
  return schema;
}

namespace {

Value cell_from_text(const ColumnSchema& col, std::size_t row, std::string_view text) {
  switch (col.type) {
    case ColumnType::Text:
      return Value(std::string(text));
    case ColumnType::Integer: {
      std::int64_t n = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
      if (ec != std::errc() || ptr != text.data() + text.size())
        throw RowValidationError(row, col.name, "expected Integer, got '" + std::string(text) + "'");
      return Value(n);
    }
    case ColumnType::Date: {
      auto d = Date::parse(text);
      if (!d)
        throw RowValidationError(row, col.name,
                                 "expected Date (YYYY-MM-DD), got '" + std::string(text) + "'");
      return Value(*d);
    }
  }
  return Value();
}

Value cell_from_json(const ColumnSchema& col, std::size_t row, const json& cell) {
  if (cell.is_null()) return Value();
  switch (col.type) {
    case ColumnType::Text:
      if (!cell.is_string())
        throw RowValidationError(row, col.name, "expected Text, got " + cell.dump());
      return Value(cell.get<std::string>());
    case ColumnType::Integer:
      if (!cell.is_number_integer())
        throw RowValidationError(row, col.name, "expected Integer, got " + cell.dump());
      return Value(cell.get<std::int64_t>());
    case ColumnType::Date:
      if (!cell.is_string())
        throw RowValidationError(row, col.name, "expected Date (YYYY-MM-DD), got " + cell.dump());
      return cell_from_text(col, row, cell.get<std::string>());
  }
  return Value();
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

std::vector<MetadataRow> parse_jsonl_rows(const TableSchema& schema, std::string_view text) {
  std::vector<MetadataRow> rows;
  std::size_t row_number = 0;
  for (auto line : split_lines(text)) {
    if (is_blank(line)) continue;
    ++row_number;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw RowValidationError(row_number, "*", std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw RowValidationError(row_number, "*", "row is not a JSON object");
    MetadataRow row(schema.columns.size());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      auto idx = schema.find_column(it.key());
      if (!idx) throw RowValidationError(row_number, it.key(), "unknown column");
      row[*idx] = cell_from_json(schema.columns[*idx], row_number, it.value());
    }
    rows.push_back(std::move(row));
  }
  validate_rows(schema, rows);
  return rows;
}

std::vector<std::vector<CsvField>> parse_csv(std::string_view text) {
  std::vector<std::vector<CsvField>> records;
  std::vector<CsvField> record;
  CsvField field;
  bool in_quotes = false;
  bool field_started = false;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field = CsvField{};
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.text.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.text.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field.quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      // handled by '\n'
    } else if (c == '\n') {
      end_record();
    } else {
      field.text.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) throw SchemaParseError("CSV: unterminated quoted field");
  if (field_started || !record.empty()) end_record();
  return records;
}

std::vector<MetadataRow> parse_csv_rows(const TableSchema& schema, std::string_view text) {
  auto records = parse_csv(text);
  // Drop fully blank trailing records.
  while (!records.empty() && records.back().size() == 1 && records.back()[0].text.empty() &&
         !records.back()[0].quoted)
    records.pop_back();
  if (records.empty()) return {};
  const auto& header = records.front();
  std::vector<std::size_t> mapping;
  for (const auto& h : header) {
    auto idx = schema.find_column(h.text);
    if (!idx) throw RowValidationError(0, h.text, "CSV header names an unknown column");
    mapping.push_back(*idx);
  }
  std::vector<MetadataRow> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != header.size())
      throw RowValidationError(r, "*",
                               "expected " + std::to_string(header.size()) + " fields, got " +
                                   std::to_string(rec.size()));
    MetadataRow row(schema.columns.size());
    for (std::size_t f = 0; f < rec.size(); ++f) {
      const auto& col = schema.columns[mapping[f]];
      if (rec[f].text.empty() && !rec[f].quoted) continue;  // Null
      row[mapping[f]] = cell_from_text(col, r, rec[f].text);
    }
    rows.push_back(std::move(row));
  }
  validate_rows(schema, rows);
  return rows;
}

void validate_rows(const TableSchema& schema, const std::vector<MetadataRow>& rows) {
  std::vector<std::size_t> unique_idx;
  for (const auto& u : schema.unique_columns) unique_idx.push_back(*schema.find_column(u));
  std::vector<std::unordered_set<Value, ValueHash>> seen(unique_idx.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != schema.columns.size())
      throw RowValidationError(r + 1, "*",
                               "expected " + std::to_string(schema.columns.size()) + " cells, got " +
                                   std::to_string(row.size()));
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& col = schema.columns[c];
      if (!row[c].conforms_to(col.type))
        throw RowValidationError(r + 1, col.name,
                                 "value does not conform to " + std::string(to_string(col.type)));
      if (row[c].is_null() && !col.nullable)
        throw RowValidationError(r + 1, col.name, "null in non-nullable column");
    }
    for (std::size_t u = 0; u < unique_idx.size(); ++u) {
      const Value& v = row[unique_idx[u]];
      if (v.is_null()) continue;
      if (!seen[u].insert(v).second)
        throw DuplicateKeyError(r + 1, schema.columns[unique_idx[u]].name, v.to_display());
    }
  }
}

Catalog Catalog::load(const std::filesystem::path& schema_file,
                      const std::filesystem::path& data_file) {
  std::string schema_text;
  try {
    schema_text = read_file(schema_file);
  } catch (const StorageError& e) {
    throw SchemaParseError(e.what());
  }
  Table table;
  table.schema = parse_schema_descriptor(schema_text);
  const std::string data = read_file(data_file);
  auto ext = lowercase(data_file.extension().string());
  bool jsonl;
  if (ext == ".csv") {
    jsonl = false;
  } else if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") {
    jsonl = true;
  } else {
    auto first = data.find_first_not_of(" \t\r\n");
    jsonl = first != std::string::npos && data[first] == '{';
  }
  table.rows = jsonl ? parse_jsonl_rows(table.schema, data) : parse_csv_rows(table.schema, data);
  std::vector<Table> tables;
  tables.push_back(std::move(table));
  return from_tables(std::move(tables), digest_files({schema_file, data_file}));
}

Catalog Catalog::from_tables(std::vector<Table> tables, std::string digest) {
  for (const auto& t : tables) {
    t.schema.validate();
    validate_rows(t.schema, t.rows);
  }
  Catalog catalog;
  catalog.tables_ = std::move(tables);
  catalog.digest_ = std::move(digest);
  catalog.index_tables();
  return catalog;
}

void Catalog::index_tables() {
  index_.clear();
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    std::vector<std::string> names{tables_[i].schema.table_name};
    names.insert(names.end(), tables_[i].schema.aliases.begin(), tables_[i].schema.aliases.end());
    for (const auto& n : names) {
      auto [it, inserted] = index_.emplace(lookup_key(n), i);
      if (!inserted && it->second != i)
        throw SchemaParseError("name '" + n + "' resolves to more than one table");
    }
  }
}

const Table* Catalog::find(std::string_view name) const {
  auto it = index_.find(lookup_key(name));
  return it == index_.end() ? nullptr : &tables_[it->second];
}

std::vector<std::string> Catalog::known_names() const {
  std::vector<std::string> out;
  for (const auto& t : tables_) {
    out.push_back(t.schema.table_name);
    out.insert(out.end(), t.schema.aliases.begin(), t.schema.aliases.end());
  }
  return out;
}

const Table& Catalog::table(std::string_view name) const {
  if (const Table* t = find(name)) return *t;
  throw UnknownTableError(std::string(name), known_names());
}

const TableSchema& Catalog::resolve_table(std::string_view name) const { return table(name).schema; }

std::span<const MetadataRow> Catalog::scan_rows(std::string_view name) const {
  return table(name).rows;
}

namespace {

json cell_to_json(const Value& v) {
  if (v.is_text()) return v.text();
  if (v.is_integer()) return v.integer();
  if (v.is_date()) return v.date().to_string();
  return nullptr;
}

json schema_to_json(const TableSchema& schema) {
  json cols = json::array();
  for (const auto& c : schema.columns)
    cols.push_back({{"name", c.name}, {"type", std::string(to_string(c.type))}, {"nullable", c.nullable}});
  return {{"name", schema.table_name},
          {"aliases", schema.aliases},
          {"columns", cols},
          {"unique", schema.unique_columns}};
}

}  // namespace

std::string table_to_jsonl(const Table& table) {
  std::string out;
  for (const auto& row : table.rows) {
    // ordered_json keeps schema column order in the output
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.schema.columns[c].name] = cell_to_json(row[c]);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::string canonical_serialization(const Catalog& catalog) {
  std::string out;
  for (const auto& t : catalog.tables()) {
    out += schema_to_json(t.schema).dump();
    out += '\n';
    out += table_to_jsonl(t);
  }
  return out;
}

}  // namespace cohortq
