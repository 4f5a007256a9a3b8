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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "cohortq/cohort_store.hpp"
#include "cohortq/llm/provider.hpp"
#include "test_util.hpp"

using namespace cohortq;

namespace {

sql::ResultTable table_of(std::vector<std::string> names, std::vector<ColumnType> types,
                          std::vector<std::vector<Value>> rows) {
  return sql::ResultTable{std::move(names), std::move(types), std::move(rows)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CorrectionTranscript success_transcript(const Catalog& catalog, const std::string& query) {
  llm::ScriptedProvider p({"```\n" + query + "\n```"});
  return run_pipeline("cohort please", catalog, p, {});
}

}  // namespace

TEST(Export, SingleCellCsv) {
  auto t = table_of({"n"}, {ColumnType::Integer}, {{Value(std::int64_t{42})}});
  EXPECT_EQ(export_table(t, ExportFormat::Csv), "n\r\n42\r\n");
}

TEST(Export, EmptyTableIsHeaderOnly) {
  auto t = table_of({"a", "b"}, {ColumnType::Text, ColumnType::Date}, {});
  EXPECT_EQ(export_table(t, ExportFormat::Csv), "a,b\r\n");
  EXPECT_EQ(export_table(t, ExportFormat::Jsonl), "");
}

TEST(Export, QuotesSpecialFields) {
  auto t = table_of({"s"}, {ColumnType::Text},
                    {{Value(std::string("Chest, 2.5mm"))},
                     {Value(std::string("say \"hi\""))},
                     {Value(std::string("two\nlines"))},
                     {Value(std::string(""))},
                     {Value()}});
  EXPECT_EQ(export_table(t, ExportFormat::Csv),
            "s\r\n\"Chest, 2.5mm\"\r\n\"say \"\"hi\"\"\"\r\n\"two\nlines\"\r\n\"\"\r\n\r\n");
}

TEST(Export, JsonlTypedValues) {
  auto t = table_of({"s", "n", "d"}, {ColumnType::Text, ColumnType::Integer, ColumnType::Date},
                    {{Value(std::string("x")), Value(std::int64_t{-3}), Value(Date{2009, 1, 2})},
                     {Value(), Value(), Value()}});
  EXPECT_EQ(export_table(t, ExportFormat::Jsonl),
            "{\"s\":\"x\",\"n\":-3,\"d\":\"2009-01-02\"}\n{\"s\":null,\"n\":null,\"d\":null}\n");
}

TEST(Export, FormatNames) {
  EXPECT_EQ(parse_export_format("csv"), ExportFormat::Csv);
  EXPECT_EQ(parse_export_format("jsonl"), ExportFormat::Jsonl);
  EXPECT_FALSE(parse_export_format("parquet"));
}

// Property: CSV written by export_table reads back to the same typed table.
TEST(Export, CsvRoundTripProperty) {
  std::mt19937 rng(7);
  const std::vector<std::string> texts = {"", "a", "a,b", "\"q\"", "x\r\ny", " lead", "trail ", "é,ü", "NULL"};
  for (int iter = 0; iter < 300; ++iter) {
    const int ncols = 1 + static_cast<int>(rng() % 4);
    const int nrows = static_cast<int>(rng() % 8);
    sql::ResultTable t;
    for (int c = 0; c < ncols; ++c) {
      t.column_names.push_back("c" + std::to_string(c));
      t.column_types.push_back(static_cast<ColumnType>(rng() % 3));
    }
    for (int r = 0; r < nrows; ++r) {
      std::vector<Value> row;
      for (int c = 0; c < ncols; ++c) {
        if (rng() % 5 == 0) {
          row.emplace_back();
          continue;
        }
        switch (t.column_types[c]) {
          case ColumnType::Text: row.emplace_back(texts[rng() % texts.size()]); break;
          case ColumnType::Integer: row.emplace_back(static_cast<std::int64_t>(rng() % 2001) - 1000); break;
          case ColumnType::Date: row.emplace_back(Date{1990 + static_cast<int>(rng() % 30), 2, 28}); break;
        }
      }
      t.rows.push_back(std::move(row));
    }
    const auto csv = export_table(t, ExportFormat::Csv);
    EXPECT_EQ(import_csv(csv, t.column_types).rows, t.rows) << csv;
  }
}

TEST(Store, MaterializeWritesManifestAndTable) {
  const auto catalog = testutil::fixture_catalog();
  testutil::TempDir dir;
  auto t = success_transcript(catalog, "SELECT SOPInstanceUID, storage_url FROM dicom_all WHERE collection_id = 'nsclc_radiomics'");
  ASSERT_EQ(t.outcome, Outcome::Success);
  auto m = materialize_cohort(t, dir.path(), catalog.digest());
  EXPECT_EQ(m.row_count, 5u);
  EXPECT_EQ(m.source_catalog, catalog.digest());
  EXPECT_EQ(m.user_input, "cohort please");
  EXPECT_EQ(m.column_names, (std::vector<std::string>{"SOPInstanceUID", "storage_url"}));

  const auto cohort_dir = dir.path() / m.cohort_id;
  std::set<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(cohort_dir)) files.insert(e.path().filename().string());
  EXPECT_EQ(files, (std::set<std::string>{"manifest.json", "table.csv"}));
  EXPECT_EQ(slurp(cohort_dir / "table.csv"), export_table(*t.final_result, ExportFormat::Csv));

  CohortStore store(dir.path());
  ASSERT_TRUE(store.manifest(m.cohort_id));
  EXPECT_EQ(*store.manifest(m.cohort_id), m);
  EXPECT_EQ(*store.table(m.cohort_id), *t.final_result);
  EXPECT_FALSE(store.manifest("01ARZ3NDEKTSV4RRFFQ69G5FAV"));
  EXPECT_FALSE(store.manifest("../etc"));
}

TEST(Store, RefusesUnsuccessfulTranscript) {
  const auto catalog = testutil::fixture_catalog();
  testutil::TempDir dir;
  llm::ScriptedProvider p(std::vector<std::string>(10, "```\nSELECT nope FROM dicom_all\n```"));
  auto t = run_pipeline("x", catalog, p, {});
  ASSERT_EQ(t.outcome, Outcome::ExhaustedAttempts);
  EXPECT_THROW(materialize_cohort(t, dir.path(), catalog.digest()), NotSuccessfulError);
  EXPECT_TRUE(std::filesystem::is_empty(dir.path()));
}

TEST(Store, SameTranscriptTwiceGivesDistinctIdsSameBytes) {
  const auto catalog = testutil::fixture_catalog();
  testutil::TempDir dir;
  auto t = success_transcript(catalog, "SELECT PatientID, Modality FROM dicom_all ORDER BY PatientID");
  auto a = materialize_cohort(t, dir.path(), catalog.digest());
  auto b = materialize_cohort(t, dir.path(), catalog.digest());
  EXPECT_NE(a.cohort_id, b.cohort_id);
  EXPECT_EQ(slurp(dir.path() / a.cohort_id / "table.csv"), slurp(dir.path() / b.cohort_id / "table.csv"));
  auto listed = CohortStore(dir.path()).list();
  ASSERT_EQ(listed.size(), 2u);
  EXPECT_EQ(listed[0].cohort_id, a.cohort_id);
  EXPECT_EQ(listed[1].cohort_id, b.cohort_id);
}

TEST(Store, ManifestJsonRoundTrip) {
  CohortManifest m{"01ARZ3NDEKTSV4RRFFQ69G5FAV", "2026-01-02T03:04:05.678Z", "q", "SELECT 1", 3,
                   {"a", "f0_"}, {ColumnType::Text, ColumnType::Integer}, "abc"};
  EXPECT_EQ(manifest_from_json(manifest_to_json(m)), m);
}

TEST(CohortId, UlidShapeAndMonotonic) {
  const std::string alphabet = "0123456789ABCDEFGHJKMNPQRSTVWXYZ";
  std::string prev;
  for (int i = 0; i < 2000; ++i) {
    auto id = new_cohort_id();
    ASSERT_EQ(id.size(), 26u);
    for (char c : id) ASSERT_NE(alphabet.find(c), std::string::npos) << id;
    ASSERT_GT(id, prev);
    prev = id;
  }
}
