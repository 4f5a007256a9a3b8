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

#include <cctype>

#include "cohortq/catalog.hpp"
#include "cohortq/sql/lexer.hpp"
#include "cohortq/sql/parser.hpp"

namespace cohortq::sql {

namespace {

bool plain_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  std::string up(s);
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return !is_reserved_keyword(up);
}

// Dotted name; quoted as a whole when any segment needs it.
std::string name_text(std::string_view dotted) {
  std::size_t start = 0;
  bool plain = true;
  while (true) {
    auto dot = dotted.find('.', start);
    auto seg = dotted.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    if (!plain_identifier(seg)) plain = false;
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return plain ? std::string(dotted) : "`" + std::string(dotted) + "`";
}

std::string column_text(const Expr& e) {
  std::string out;
  if (!e.qualifier.empty()) out = name_text(e.qualifier) + ".";
  // a column name containing a dot cannot be printed unquoted
  out += plain_identifier(e.name) ? e.name : "`" + e.name + "`";
  return out;
}

int precedence(const Predicate& p) {
  switch (p.kind) {
    case PredKind::Or: return 1;
    case PredKind::And: return 2;
    case PredKind::Not: return 3;
    default: return 4;
  }
}

}  // namespace

std::string quote_string(std::string_view value) {
  std::string out = "'";
  for (char c : value) {
    if (c == '\'') {
      out += "''";
    } else if (c == '\\') {
      out += "\\\\";
    } else {
      out.push_back(c);
    }
  }
  out += "'";
  return out;
}

std::string pretty_print(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Column: return column_text(e);
    case ExprKind::String: return quote_string(e.text);
    case ExprKind::Integer: return std::to_string(e.integer);
    case ExprKind::Date: return "DATE '" + e.date.to_string() + "'";
    case ExprKind::Lower: return "LOWER(" + pretty_print(e.args.at(0)) + ")";
    case ExprKind::Upper: return "UPPER(" + pretty_print(e.args.at(0)) + ")";
    case ExprKind::Count: return "COUNT(" + pretty_print(e.args.at(0)) + ")";
    case ExprKind::CountStar: return "COUNT(*)";
    case ExprKind::CountDistinct: return "COUNT(DISTINCT " + pretty_print(e.args.at(0)) + ")";
  }
  return {};
}

std::string pretty_print(const Predicate& p) {
  auto child_text = [&](const Predicate& child) {
    std::string s = pretty_print(child);
    // Equal precedence also needs parens: flattened AND/OR chains would
    // otherwise re-parse into a different shape.
    bool needs = p.kind == PredKind::Not ? precedence(child) < precedence(p)
                                         : precedence(child) <= precedence(p);
    return needs ? "(" + s + ")" : s;
  };
  switch (p.kind) {
    case PredKind::Compare:
      return pretty_print(p.operands.at(0)) + " " + std::string(to_string(p.op)) + " " +
             pretty_print(p.operands.at(1));
    case PredKind::Like:
      return pretty_print(p.operands.at(0)) + (p.negated ? " NOT LIKE " : " LIKE ") +
             pretty_print(p.operands.at(1));
    case PredKind::In: {
      std::string out = pretty_print(p.operands.at(0)) + (p.negated ? " NOT IN (" : " IN (");
      for (std::size_t i = 1; i < p.operands.size(); ++i) {
        if (i > 1) out += ", ";
        out += pretty_print(p.operands[i]);
      }
      return out + ")";
    }
    case PredKind::RegexpContains:
      return "REGEXP_CONTAINS(" + pretty_print(p.operands.at(0)) + ", " +
             pretty_print(p.operands.at(1)) + ")";
    case PredKind::IsNull:
      return pretty_print(p.operands.at(0)) + (p.negated ? " IS NOT NULL" : " IS NULL");
    case PredKind::And:
    case PredKind::Or: {
      std::string out;
      for (std::size_t i = 0; i < p.children.size(); ++i) {
        if (i) out += p.kind == PredKind::And ? " AND " : " OR ";
        out += child_text(p.children[i]);
      }
      return out;
    }
    case PredKind::Not:
      return "NOT " + child_text(p.children.at(0));
  }
  return {};
}

std::string pretty_print(const QueryAst& ast) {
  std::string out = ast.distinct ? "SELECT DISTINCT " : "SELECT ";
  for (std::size_t i = 0; i < ast.select_list.size(); ++i) {
    if (i) out += ", ";
    const auto& item = ast.select_list[i];
    if (item.star) {
      out += "*";
      continue;
    }
    out += pretty_print(item.expr);
    if (!item.alias.empty())
      out += " AS " + (plain_identifier(item.alias) ? item.alias : "`" + item.alias + "`");
  }
  out += " FROM " + name_text(ast.from_table);
  if (ast.where) out += " WHERE " + pretty_print(*ast.where);
  if (!ast.group_by.empty()) {
    out += " GROUP BY ";
    for (std::size_t i = 0; i < ast.group_by.size(); ++i) {
      if (i) out += ", ";
      out += pretty_print(ast.group_by[i]);
    }
  }
  if (!ast.order_by.empty()) {
    out += " ORDER BY ";
    for (std::size_t i = 0; i < ast.order_by.size(); ++i) {
      if (i) out += ", ";
      out += pretty_print(ast.order_by[i].expr);
      out += ast.order_by[i].descending ? " DESC" : " ASC";
    }
  }
  if (ast.limit) out += " LIMIT " + std::to_string(*ast.limit);
  return out;
}

}  // namespace cohortq::sql
