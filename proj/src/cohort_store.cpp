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

#include "cohortq/cohort_store.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <mutex>
#include <random>

#include "cohortq/digest.hpp"
#include "cohortq/transcript_json.hpp"

namespace cohortq {

using nlohmann::json;

std::optional<ExportFormat> parse_export_format(std::string_view name) {
  if (name == "csv") return ExportFormat::Csv;
  if (name == "jsonl") return ExportFormat::Jsonl;
  return std::nullopt;
}

namespace {

void append_csv_field(std::string& out, const std::string& text, bool force_quotes) {
  if (!force_quotes && text.find_first_of(",\"\r\n") == std::string::npos) {
    out += text;
    return;
  }
  out += '"';
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

}  // namespace

std::string export_table(const sql::ResultTable& table, ExportFormat format) {
  std::string out;
  if (format == ExportFormat::Csv) {
    for (std::size_t i = 0; i < table.column_names.size(); ++i) {
      if (i) out += ',';
      append_csv_field(out, table.column_names[i], false);
    }
    out += "\r\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        if (row[i].is_null()) continue;
        const std::string text = row[i].to_display();
        append_csv_field(out, text, text.empty());
      }
      out += "\r\n";
    }
    return out;
  }
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.column_names[i]] = cell_to_json(row[i]);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

sql::ResultTable import_csv(std::string_view csv, const std::vector<ColumnType>& types) {
  auto records = parse_csv(csv);
  if (records.empty()) throw Error("CSV has no header row");
  sql::ResultTable table;
  for (const auto& h : records.front()) table.column_names.push_back(h.text);
  if (table.column_names.size() != types.size()) throw Error("CSV header does not match the column types");
  table.column_types = types;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != types.size()) throw Error("CSV row " + std::to_string(r) + " has the wrong number of fields");
    std::vector<Value> row;
    for (std::size_t i = 0; i < rec.size(); ++i) {
      if (rec[i].text.empty() && !rec[i].quoted) {
        row.emplace_back();
        continue;
      }
      switch (types[i]) {
        case ColumnType::Text: row.emplace_back(rec[i].text); break;
        case ColumnType::Integer: row.emplace_back(static_cast<std::int64_t>(std::stoll(rec[i].text))); break;
        case ColumnType::Date: {
          auto d = Date::parse(rec[i].text);
          if (!d) throw Error("invalid date in CSV: " + rec[i].text);
          row.emplace_back(*d);
          break;
        }
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string manifest_to_json(const CohortManifest& m) {
  json types = json::array();
  for (auto t : m.column_types) types.push_back(std::string(to_string(t)));
  json doc = {{"cohort_id", m.cohort_id},
              {"created_at", m.created_at},
              {"user_input", m.user_input},
              {"final_query", m.final_query},
              {"row_count", m.row_count},
              {"column_names", m.column_names},
              {"column_types", types},
              {"source_catalog", m.source_catalog}};
  return doc.dump(2) + "\n";
}

CohortManifest manifest_from_json(std::string_view text) {
  try {
    json doc = json::parse(text);
    CohortManifest m;
    m.cohort_id = doc.at("cohort_id").get<std::string>();
    m.created_at = doc.at("created_at").get<std::string>();
    m.user_input = doc.at("user_input").get<std::string>();
    m.final_query = doc.at("final_query").get<std::string>();
    m.row_count = doc.at("row_count").get<std::size_t>();
    m.column_names = doc.at("column_names").get<std::vector<std::string>>();
    for (const auto& t : doc.at("column_types")) {
      auto type = parse_column_type(t.get<std::string>());
      if (!type) throw Error("unknown column type in manifest");
      m.column_types.push_back(*type);
    }
    m.source_catalog = doc.at("source_catalog").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    throw StorageError(std::string("malformed manifest: ") + e.what());
  }
}

namespace {

constexpr char kCrockford[] = "0123456789ABCDEFGHJKMNPQRSTVWXYZ";

struct UlidState {
  std::mutex mutex;
  std::uint64_t last_ms = 0;
  std::uint16_t rand_hi = 0;  // top 16 of the 80 random bits
  std::uint64_t rand_lo = 0;
  std::mt19937_64 rng{std::random_device{}()};
};

UlidState& ulid_state() {
  static UlidState state;
  return state;
}

std::string iso_utc(std::chrono::system_clock::time_point tp) {
  using namespace std::chrono;
  const auto ms = duration_cast<milliseconds>(tp.time_since_epoch()).count();
  const std::time_t secs = static_cast<std::time_t>(ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms % 1000));
  return buf;
}

void write_atomically(const std::filesystem::path& path, std::string_view data) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StorageError("cannot write " + tmp);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw StorageError("short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw StorageError("cannot rename " + tmp + ": " + ec.message());
}

bool valid_cohort_id(std::string_view id) {
  return id.size() == 26 && std::all_of(id.begin(), id.end(), [](char c) {
           return std::string_view(kCrockford).find(c) != std::string_view::npos;
         });
}

}  // namespace

std::string new_cohort_id() {
  auto& st = ulid_state();
  std::lock_guard lock(st.mutex);
  const auto now = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
          .count());
  if (now > st.last_ms) {
    st.last_ms = now;
    st.rand_hi = static_cast<std::uint16_t>(st.rng());
    st.rand_lo = st.rng();
  } else {
    // same (or earlier) millisecond: keep the timestamp, bump the randomness
    if (++st.rand_lo == 0) ++st.rand_hi;
  }
  std::array<char, 26> out{};
  std::uint64_t ts = st.last_ms;
  for (int i = 9; i >= 0; --i) {
    out[i] = kCrockford[ts & 31];
    ts >>= 5;
  }
  // 80 random bits = 16 base32 digits
  std::uint64_t lo = st.rand_lo;
  std::uint64_t hi = st.rand_hi;
  for (int i = 25; i >= 10; --i) {
    out[i] = kCrockford[lo & 31];
    lo = (lo >> 5) | ((hi & 31) << 59);
    hi >>= 5;
  }
  return std::string(out.data(), out.size());
}

CohortManifest materialize_cohort(const CorrectionTranscript& transcript, const std::filesystem::path& store_dir,
                                  const std::string& catalog_digest) {
  if (transcript.outcome != Outcome::Success || !transcript.final_result)
    throw NotSuccessfulError("cannot materialize a cohort from a transcript with outcome " +
                             std::string(to_string(transcript.outcome)));
  const auto& table = *transcript.final_result;
  CohortManifest m;
  m.cohort_id = new_cohort_id();
  m.created_at = iso_utc(std::chrono::system_clock::now());
  m.user_input = transcript.user_input;
  m.final_query = transcript.final_query.value_or("");
  m.row_count = table.rows.size();
  m.column_names = table.column_names;
  m.column_types = table.column_types;
  m.source_catalog = catalog_digest;

  std::error_code ec;
  std::filesystem::create_directories(store_dir, ec);
  if (ec) throw StorageError("cannot create store directory " + store_dir.string() + ": " + ec.message());
  const auto dir = store_dir / m.cohort_id;
  if (!std::filesystem::create_directory(dir, ec) || ec)
    throw StorageError("cohort directory " + dir.string() + " already exists or cannot be created");
  write_atomically(dir / "table.csv", export_table(table, ExportFormat::Csv));
  write_atomically(dir / "manifest.json", manifest_to_json(m));
  return m;
}

std::optional<CohortManifest> CohortStore::manifest(std::string_view cohort_id) const {
  if (!valid_cohort_id(cohort_id)) return std::nullopt;
  const auto path = dir_ / std::string(cohort_id) / "manifest.json";
  if (!std::filesystem::exists(path)) return std::nullopt;
  return manifest_from_json(read_file(path));
}

std::optional<sql::ResultTable> CohortStore::table(std::string_view cohort_id) const {
  auto m = manifest(cohort_id);
  if (!m) return std::nullopt;
  return import_csv(read_file(dir_ / std::string(cohort_id) / "table.csv"), m->column_types);
}

std::vector<CohortManifest> CohortStore::list() const {
  std::vector<CohortManifest> out;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir_, ec)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (!entry.is_directory()) continue;
    if (auto m = manifest(entry.path().filename().string())) out.push_back(std::move(*m));
  }
  std::sort(out.begin(), out.end(),
            [](const CohortManifest& a, const CohortManifest& b) { return a.cohort_id < b.cohort_id; });
  return out;
}

}  // namespace cohortq
