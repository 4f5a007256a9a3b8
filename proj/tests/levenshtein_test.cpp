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
#include "levenshtein_oracle.hpp"

using cohortq::eval::collapse_whitespace;
using cohortq::eval::levenshtein;

TEST(Levenshtein, Examples) {
  EXPECT_EQ(levenshtein("", "abc"), 3u);
  EXPECT_EQ(levenshtein("abc", ""), 3u);
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein("flaw", "lawn"), 2u);
  EXPECT_EQ(levenshtein("same", "same"), 0u);
}

TEST(Levenshtein, CountsCodePointsNotBytes) {
  EXPECT_EQ(levenshtein("café", "cafe"), 1u);
  EXPECT_EQ(levenshtein("日本", "日本語"), 1u);
  EXPECT_EQ(levenshtein(U"ab", U"ba"), 2u);
}

TEST(Levenshtein, NaiveAndMemoizedRecursionAgree) {
  // every pair of strings of length <= 4 over {a,b,c}
  std::vector<std::u32string> all{U""};
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].size() < 4)
      for (char32_t c : {U'a', U'b', U'c'}) all.push_back(all[i] + c);
  for (const auto& a : all) {
    oracle::MemoLevenshtein<4> memo(a);
    for (const auto& b : all) {
      oracle::MemoLevenshtein<4> fresh(a);
      for (char32_t c : b) fresh.push(c);
      const auto expected = oracle::levenshtein_naive(a, b);
      ASSERT_EQ(fresh.distance(), expected);
      ASSERT_EQ(levenshtein(a, b), expected);
    }
  }
}

TEST(Levenshtein, MetricAxiomsOnRandomPairs) {
  std::mt19937_64 rng(11);
  auto random_string = [&] {
    std::string s;
    for (int i = 0, n = static_cast<int>(rng() % 10); i < n; ++i) s += static_cast<char>('a' + rng() % 3);
    return s;
  };
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_string(), b = random_string(), c = random_string();
    const auto ab = levenshtein(a, b);
    EXPECT_EQ(ab, levenshtein(b, a));
    EXPECT_EQ(ab == 0, a == b);
    EXPECT_LE(levenshtein(a, c), ab + levenshtein(b, c));
    EXPECT_LE(ab, std::max(a.size(), b.size()));
    EXPECT_GE(ab, a.size() > b.size() ? a.size() - b.size() : b.size() - a.size());
  }
}

TEST(CollapseWhitespace, CollapsesAndTrims) {
  EXPECT_EQ(collapse_whitespace("  SELECT\n  a\t\tFROM t  "), "SELECT a FROM t");
  EXPECT_EQ(collapse_whitespace(""), "");
  EXPECT_EQ(collapse_whitespace(" \n "), "");
}
