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

#include "cohortq/sql/error.hpp"
#include "cohortq/sql/evaluator.hpp"
#include "sql_oracle.hpp"

using namespace cohortq;

TEST(SqlOracle, RandomQueriesMatchBruteForce) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 400; ++i) {
    const auto table = oracle::random_table(rng);
    const auto catalog = oracle::to_catalog(table);
    const auto query = oracle::random_query(rng, table);
    const std::string sql = oracle::to_sql(query, table, &rng);
    SCOPED_TRACE(sql);
    sql::ResultTable got;
    try {
      got = sql::run_query(sql, catalog);
    } catch (const sql::QueryException& e) {
      FAIL() << sql::format_error(e.error());
    }
    const auto want = oracle::evaluate(query, table);
    ASSERT_EQ(got.column_names, want.column_names);
    ASSERT_EQ(got.column_types, want.column_types);
    ASSERT_EQ(got.rows, want.rows);
  }
}

TEST(SqlOracle, OracleLikeMatcherExamples) {
  EXPECT_TRUE(oracle::like_match("abc", "a%"));
  EXPECT_TRUE(oracle::like_match("abc", "_b_"));
  EXPECT_FALSE(oracle::like_match("abc", "b%"));
  EXPECT_TRUE(oracle::like_match("", "%%"));
}
