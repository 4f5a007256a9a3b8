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
#include "cohortq/sql/lexer.hpp"
#include "cohortq/sql/parser.hpp"
#include "sql_oracle.hpp"

using namespace cohortq;
using namespace cohortq::sql;

namespace {

QueryError error_of(std::string_view sql) {
  try {
    parse_query(sql);
  } catch (const QueryException& e) {
    return e.error();
  }
  ADD_FAILURE() << "no error for: " << sql;
  return {};
}

}  // namespace

TEST(LexerTest, TokenKinds) {
  auto toks = tokenize("select `a.b`, x FROM t WHERE y >= -3 AND z <> r'\\d+' -- note\n;");
  ASSERT_GE(toks.size(), 14u);
  EXPECT_EQ(toks[0].type, TokenType::Keyword);
  EXPECT_EQ(toks[0].text, "SELECT");
  EXPECT_EQ(toks[1].type, TokenType::QuotedIdentifier);
  EXPECT_EQ(toks[1].value, "a.b");
  EXPECT_EQ(toks.back().type, TokenType::End);
  bool saw_raw = false;
  for (const auto& t : toks)
    if (t.type == TokenType::String) {
      EXPECT_EQ(t.value, "\\d+");
      saw_raw = true;
    }
  EXPECT_TRUE(saw_raw);
}

TEST(LexerTest, StringEscapes) {
  auto toks = tokenize("'it''s' 'a\\'b' 'tab\\there'");
  EXPECT_EQ(toks[0].value, "it's");
  EXPECT_EQ(toks[1].value, "a'b");
  EXPECT_EQ(toks[2].value, "tab\there");
}

TEST(LexerTest, DoubleQuotesAreALexErrorWithHint) {
  try {
    tokenize("SELECT * FROM t WHERE a = \"MR\"");
    FAIL();
  } catch (const QueryException& e) {
    EXPECT_EQ(e.error().kind, ErrorKind::LexError);
    ASSERT_TRUE(e.error().hint);
    EXPECT_NE(e.error().hint->find("single quotes"), std::string::npos);
    ASSERT_TRUE(e.error().position);
    EXPECT_EQ(e.error().position->column, 27u);
  }
}

TEST(LexerTest, UnterminatedString) {
  try {
    tokenize("SELECT 'abc");
    FAIL();
  } catch (const QueryException& e) {
    EXPECT_EQ(e.error().kind, ErrorKind::LexError);
  }
}

TEST(ParserTest, ParsesFullQuery) {
  auto ast = parse_query(
      "SELECT DISTINCT PatientID, COUNT(*) AS n FROM `bigquery-public-data.idc_current.dicom_all` "
      "WHERE Modality = 'MR' AND (PatientSex = 'M' OR PatientSex IS NULL) AND NOT StudyDate < DATE '2000-01-01' "
      "GROUP BY PatientID ORDER BY n DESC, 1 LIMIT 5;");
  EXPECT_TRUE(ast.distinct);
  ASSERT_EQ(ast.select_list.size(), 2u);
  EXPECT_EQ(ast.select_list[1].alias, "n");
  EXPECT_EQ(ast.from_table, "bigquery-public-data.idc_current.dicom_all");
  ASSERT_TRUE(ast.where);
  EXPECT_EQ(ast.where->kind, PredKind::And);
  EXPECT_EQ(ast.where->children.size(), 3u);
  ASSERT_EQ(ast.group_by.size(), 1u);
  ASSERT_EQ(ast.order_by.size(), 2u);
  EXPECT_TRUE(ast.order_by[0].descending);
  ASSERT_TRUE(ast.limit);
  EXPECT_EQ(*ast.limit, 5);
}

TEST(ParserTest, ErrorsCarryPositions) {
  auto e = error_of("SELECT FROM dicom_all");
  EXPECT_EQ(e.kind, ErrorKind::ParseError);
  EXPECT_NE(e.message.find("FROM"), std::string::npos);
  ASSERT_TRUE(e.position);
  EXPECT_EQ(e.position->line, 1u);
  EXPECT_EQ(e.position->column, 8u);

  e = error_of("SELECT a FROM t\nWHERE a = 1 GROUP a");
  EXPECT_EQ(e.kind, ErrorKind::ParseError);
  ASSERT_TRUE(e.position);
  EXPECT_EQ(e.position->line, 2u);
  EXPECT_EQ(e.position->line_text, "WHERE a = 1 GROUP a");
}

TEST(ParserTest, UnsupportedFunctionsListTheSupportedOnes) {
  auto e = error_of("SELECT MIN(StudyDate) FROM dicom_all");
  EXPECT_EQ(e.kind, ErrorKind::ParseError);
  ASSERT_TRUE(e.hint);
  EXPECT_NE(e.hint->find("COUNT"), std::string::npos);
  EXPECT_NE(e.hint->find("REGEXP_CONTAINS"), std::string::npos);
}

TEST(ParserTest, RejectsTrailingGarbageAndEmptyInput) {
  EXPECT_EQ(error_of("SELECT a FROM t t2 t3").kind, ErrorKind::ParseError);
  EXPECT_EQ(error_of("").kind, ErrorKind::ParseError);
  EXPECT_EQ(error_of("SELECT a FROM t LIMIT -1").kind, ErrorKind::ParseError);
  EXPECT_EQ(error_of("SELECT a FROM t WHERE").kind, ErrorKind::ParseError);
  EXPECT_EQ(error_of("SELECT a FROM t WHERE a IN ()").kind, ErrorKind::ParseError);
}

TEST(ParserTest, CommentsAndSemicolon) {
  auto a = parse_query("SELECT a -- the column\nFROM t;");
  auto b = parse_query("SELECT a FROM t");
  EXPECT_EQ(a, b);
}

TEST(ErrorFormatTest, FrozenTemplate) {
  QueryError e;
  e.kind = ErrorKind::BindError;
  e.message = "unknown column 'BodyPart'";
  e.position = position_at("SELECT * FROM t WHERE BodyPart = 'x'", 22, "BodyPart");
  e.hint = "did you mean 'BodyPartExamined'?";
  EXPECT_EQ(format_error(e),
            "BindError: unknown column 'BodyPart'\n"
            "at line 1, column 23, near 'BodyPart'\n"
            "  SELECT * FROM t WHERE BodyPart = 'x'\n"
            "                        ^\n"
            "hint: did you mean 'BodyPartExamined'?\n");
}

TEST(ErrorFormatTest, MinimalError) {
  QueryError e;
  e.kind = ErrorKind::LimitError;
  e.message = "too many rows";
  EXPECT_EQ(format_error(e), "LimitError: too many rows\n");
}

TEST(ErrorClassifyTest, Groups) {
  for (auto k : {ErrorKind::LexError, ErrorKind::ParseError, ErrorKind::BindError, ErrorKind::PatternError})
    EXPECT_EQ(classify_error({k, "x", {}, {}}), ErrorGroup::Syntax);
  EXPECT_EQ(classify_error({ErrorKind::LimitError, "x", {}, {}}), ErrorGroup::Resource);
  for (auto k : {ErrorKind::LexError, ErrorKind::ParseError, ErrorKind::BindError, ErrorKind::PatternError,
                 ErrorKind::LimitError})
    EXPECT_NE(classify_error({k, "x", {}, {}}), ErrorGroup::Semantic);
}

// pretty_print(parse(q)) parses back to the same tree.
TEST(ParserProperty, PrettyPrintRoundTrips) {
  std::mt19937_64 rng(20261016);
  for (int i = 0; i < 500; ++i) {
    auto table = oracle::random_table(rng, 3, 6);
    auto q = oracle::random_query(rng, table);
    const std::string sql = oracle::to_sql(q, table, &rng);
    SCOPED_TRACE(sql);
    QueryAst ast = parse_query(sql);
    const std::string printed = pretty_print(ast);
    QueryAst again = parse_query(printed);
    EXPECT_EQ(ast, again) << printed;
    EXPECT_EQ(pretty_print(again), printed);
  }
}

TEST(ParserProperty, QuoteStringRoundTrips) {
  for (std::string s : {"", "a", "it's", "back\\slash", "new\nline", "''", "\\'"}) {
    auto toks = tokenize(quote_string(s));
    ASSERT_EQ(toks[0].type, TokenType::String);
    EXPECT_EQ(toks[0].value, s);
  }
}
