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

#include <random>

#include "cohortq/eval/levenshtein.hpp"
#include "cohortq/sql/kernels.hpp"
#include "cohortq/sql/parser.hpp"
#include "cohortq/sql/plan.hpp"
#include "sql_oracle.hpp"

using namespace cohortq;

TEST(Kernels, ParallelFilterMatchesSerial) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 40; ++i) {
    // large enough to cross the parallel threshold
    auto table = oracle::random_table(rng, 9000, 5);
    auto catalog = oracle::to_catalog(table);
    oracle::Query q = oracle::random_query(rng, table);
    if (!q.where) continue;
    q.group_by.clear();
    q.select.clear();
    q.star = true;
    q.distinct = false;
    q.order.clear();
    const auto plan = sql::bind_query(sql::parse_query(oracle::to_sql(q, table)), catalog);
    const auto rows = catalog.scan_rows("t");
    const sql::BoundPredicate* pred = plan.filter ? &*plan.filter : nullptr;
    EXPECT_EQ(sql::filter_rows_parallel(pred, rows), sql::filter_rows_serial(pred, rows));
  }
}

TEST(Kernels, NullPredicateSelectsEverything) {
  std::mt19937_64 rng(5);
  auto table = oracle::random_table(rng, 10000, 2);
  auto catalog = oracle::to_catalog(table);
  auto idx = sql::filter_rows_parallel(nullptr, catalog.scan_rows("t"));
  ASSERT_EQ(idx.size(), table.rows.size());
  for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(idx[i], i);
}

TEST(Kernels, BatchLevenshteinParallelMatchesSerial) {
  std::mt19937_64 rng(3);
  std::vector<eval::StringPair> pairs;
  for (int i = 0; i < 2000; ++i) {
    std::string a, b;
    for (int k = 0, n = static_cast<int>(rng() % 40); k < n; ++k) a += static_cast<char>('a' + rng() % 4);
    for (int k = 0, n = static_cast<int>(rng() % 40); k < n; ++k) b += static_cast<char>('a' + rng() % 4);
    pairs.emplace_back(a, b);
  }
  EXPECT_EQ(eval::levenshtein_batch_parallel(pairs), eval::levenshtein_batch_serial(pairs));
  EXPECT_TRUE(eval::levenshtein_batch_parallel({}).empty());
}
