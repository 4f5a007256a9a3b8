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

// Serial vs OpenMP: WHERE filtering and batch edit distance.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "cohortq/catalog.hpp"
#include "cohortq/eval/levenshtein.hpp"
#include "cohortq/sql/kernels.hpp"
#include "cohortq/sql/parser.hpp"
#include "cohortq/sql/plan.hpp"

namespace {

using namespace cohortq;

Catalog synthetic_catalog(std::size_t n) {
  static const char* kModalities[] = {"MR", "CT", "PT", "SEG", "SM"};
  static const char* kSeries[] = {"AX T2 FLAIR", "t1_mprage_sag", "CHEST 1.25mm", "DWI", "Segmentation", "T1 POST GD"};
  Table t;
  t.schema.table_name = "series";
  t.schema.columns = {{"Modality", ColumnType::Text, false},
                      {"SeriesDescription", ColumnType::Text, true},
                      {"PatientAge", ColumnType::Integer, true}};
  std::mt19937 rng(7);
  t.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    MetadataRow row;
    row.emplace_back(std::string(kModalities[rng() % 5]));
    row.emplace_back(std::string(kSeries[rng() % 6]) + " " + std::to_string(i % 97));
    if (rng() % 10 == 0)
      row.emplace_back();
    else
      row.emplace_back(static_cast<std::int64_t>(20 + rng() % 70));
    t.rows.push_back(std::move(row));
  }
  return Catalog::from_tables({std::move(t)});
}

constexpr const char* kQuery =
    "SELECT * FROM series WHERE Modality = 'MR' AND REGEXP_CONTAINS(SeriesDescription, r'(?i)t[12]') "
    "AND PatientAge >= 40";

template <bool Parallel>
void BM_Filter(benchmark::State& state) {
  const auto catalog = synthetic_catalog(static_cast<std::size_t>(state.range(0)));
  const auto plan = sql::bind_query(sql::parse_query(kQuery), catalog);
  const auto rows = catalog.scan_rows("series");
  for (auto _ : state) {
    auto idx = Parallel ? sql::filter_rows_parallel(plan.filter ? &*plan.filter : nullptr, rows)
                        : sql::filter_rows_serial(plan.filter ? &*plan.filter : nullptr, rows);
    benchmark::DoNotOptimize(idx.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Filter<false>)->Name("filter/serial")->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 19);
BENCHMARK(BM_Filter<true>)->Name("filter/parallel")->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 19)->UseRealTime();

std::vector<eval::StringPair> query_pairs(std::size_t n) {
  std::mt19937 rng(11);
  const std::string base = "SELECT COUNT(DISTINCT PatientID) FROM dicom_all WHERE Modality = 'MR' AND ";
  std::vector<eval::StringPair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    std::string a = base + "BodyPartExamined = 'BRAIN' AND PatientSex = 'M'";
    std::string b = a;
    for (int k = 0; k < 12; ++k) b[rng() % b.size()] = static_cast<char>('a' + rng() % 26);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return pairs;
}

template <bool Parallel>
void BM_Levenshtein(benchmark::State& state) {
  const auto pairs = query_pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto d = Parallel ? eval::levenshtein_batch_parallel(pairs) : eval::levenshtein_batch_serial(pairs);
    benchmark::DoNotOptimize(d.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Levenshtein<false>)->Name("levenshtein/serial")->Arg(64)->Arg(1024);
BENCHMARK(BM_Levenshtein<true>)->Name("levenshtein/parallel")->Arg(64)->Arg(1024)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
