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

#include "cohortq/sql/parser.hpp"

#include <algorithm>

#include "cohortq/catalog.hpp"
#include "cohortq/sql/error.hpp"
#include "cohortq/sql/lexer.hpp"

namespace cohortq::sql {

bool Expr::contains_aggregate() const {
  if (is_aggregate()) return true;
  return std::any_of(args.begin(), args.end(), [](const Expr& e) { return e.contains_aggregate(); });
}

Expr Expr::column(std::string name, std::string qualifier) {
  Expr e;
  e.kind = ExprKind::Column;
  e.name = std::move(name);
  e.qualifier = std::move(qualifier);
  return e;
}

Expr Expr::string(std::string value) {
  Expr e;
  e.kind = ExprKind::String;
  e.text = std::move(value);
  return e;
}

Expr Expr::integer_literal(std::int64_t value) {
  Expr e;
  e.kind = ExprKind::Integer;
  e.integer = value;
  return e;
}

Expr Expr::date_literal(Date value) {
  Expr e;
  e.kind = ExprKind::Date;
  e.date = value;
  return e;
}

Expr Expr::call(ExprKind kind, Expr arg) {
  Expr e;
  e.kind = kind;
  e.args.push_back(std::move(arg));
  return e;
}

Expr Expr::count_star() {
  Expr e;
  e.kind = ExprKind::CountStar;
  return e;
}

Predicate Predicate::compare(Expr lhs, CmpOp op, Expr rhs) {
  Predicate p;
  p.kind = PredKind::Compare;
  p.op = op;
  p.operands = {std::move(lhs), std::move(rhs)};
  return p;
}

Predicate Predicate::like(Expr subject, std::string pattern, bool negated) {
  Predicate p;
  p.kind = PredKind::Like;
  p.negated = negated;
  p.operands = {std::move(subject), Expr::string(std::move(pattern))};
  return p;
}

Predicate Predicate::in(Expr subject, std::vector<Expr> literals, bool negated) {
  Predicate p;
  p.kind = PredKind::In;
  p.negated = negated;
  p.operands.push_back(std::move(subject));
  for (auto& l : literals) p.operands.push_back(std::move(l));
  return p;
}

Predicate Predicate::regexp_contains(Expr subject, std::string pattern) {
  Predicate p;
  p.kind = PredKind::RegexpContains;
  p.operands = {std::move(subject), Expr::string(std::move(pattern))};
  return p;
}

Predicate Predicate::is_null(Expr subject, bool negated) {
  Predicate p;
  p.kind = PredKind::IsNull;
  p.negated = negated;
  p.operands = {std::move(subject)};
  return p;
}

Predicate Predicate::conjunction(PredKind kind, std::vector<Predicate> children) {
  Predicate p;
  p.kind = kind;
  p.children = std::move(children);
  return p;
}

Predicate Predicate::negation(Predicate child) {
  Predicate p;
  p.kind = PredKind::Not;
  p.children.push_back(std::move(child));
  return p;
}

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "=";
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view source) : src_(source), tokens_(tokenize(source)) {}

  QueryAst parse() {
    QueryAst ast;
    ast.source = std::string(src_);
    expect_keyword("SELECT");
    if (accept_keyword("DISTINCT")) ast.distinct = true;
    ast.select_list.push_back(select_item());
    while (accept_symbol(",")) ast.select_list.push_back(select_item());
    expect_keyword("FROM");
    ast.from_at.offset = peek().offset;
    ast.from_table = table_name();
    if (accept_keyword("WHERE")) ast.where = predicate();
    if (accept_keyword("GROUP")) {
      expect_keyword("BY");
      do {
        const Token& t = peek();
        Expr e = expr();
        if (e.kind != ExprKind::Column) fail(t, "GROUP BY accepts column names only");
        ast.group_by.push_back(std::move(e));
      } while (accept_symbol(","));
    }
    if (accept_keyword("ORDER")) {
      expect_keyword("BY");
      do {
        OrderItem item;
        item.expr = expr();
        if (accept_keyword("DESC")) {
          item.descending = true;
        } else {
          accept_keyword("ASC");
        }
        ast.order_by.push_back(std::move(item));
      } while (accept_symbol(","));
    }
    if (accept_keyword("LIMIT")) {
      const Token& t = peek();
      if (t.type != TokenType::Integer) fail(t, "LIMIT expects a non-negative integer");
      ast.limit = t.integer;
      ++pos_;
    }
    accept_symbol(";");
    if (peek().type != TokenType::End) fail(peek(), "unexpected " + describe(peek()) + " after end of query");
    return ast;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  static std::string describe(const Token& t) {
    switch (t.type) {
      case TokenType::End: return "end of input";
      case TokenType::Keyword: return "keyword " + t.text;
      case TokenType::String: return "string " + t.text;
      default: return "token '" + t.text + "'";
    }
  }

  [[noreturn]] void fail(const Token& t, std::string message,
                         std::optional<std::string> hint = std::nullopt) const {
    QueryError err;
    err.kind = ErrorKind::ParseError;
    err.message = std::move(message);
    err.position = position_at(src_, t.offset, t.type == TokenType::End ? "" : t.text);
    err.hint = std::move(hint);
    throw QueryException(std::move(err));
  }

  bool is_keyword(std::string_view kw, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.type == TokenType::Keyword && t.text == kw;
  }
  bool is_symbol(std::string_view s, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.type == TokenType::Symbol && t.text == s;
  }
  bool accept_keyword(std::string_view kw) {
    if (!is_keyword(kw)) return false;
    ++pos_;
    return true;
  }
  bool accept_symbol(std::string_view s) {
    if (!is_symbol(s)) return false;
    ++pos_;
    return true;
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) fail(peek(), "expected " + std::string(kw) + " but found " + describe(peek()));
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) fail(peek(), "expected '" + std::string(s) + "' but found " + describe(peek()));
  }

  bool is_name_token(std::size_t ahead = 0) const {
    auto type = peek(ahead).type;
    return type == TokenType::Identifier || type == TokenType::QuotedIdentifier;
  }

  std::string table_name() {
    if (!is_name_token()) fail(peek(), "expected a table name but found " + describe(peek()));
    std::string name = peek().value;
    ++pos_;
    while (is_symbol(".") && is_name_token(1)) {
      ++pos_;
      name += "." + peek().value;
      ++pos_;
    }
    return name;
  }

  SelectItem select_item() {
    SelectItem item;
    if (accept_symbol("*")) {
      item.star = true;
      return item;
    }
    if (is_keyword("FROM") || peek().type == TokenType::End)
      fail(peek(), "expected a select expression but found " + describe(peek()));
    item.expr = expr();
    if (accept_keyword("AS")) {
      if (!is_name_token()) fail(peek(), "expected an alias after AS");
      item.alias = peek().value;
      ++pos_;
    } else if (peek().type == TokenType::Identifier || peek().type == TokenType::QuotedIdentifier) {
      item.alias = peek().value;
      ++pos_;
    }
    return item;
  }

  Expr literal_value() {
    const Token& t = peek();
    Expr e;
    e.at.offset = t.offset;
    if (t.type == TokenType::String) {
      e.kind = ExprKind::String;
      e.text = t.value;
      ++pos_;
      return e;
    }
    if (t.type == TokenType::Integer) {
      e.kind = ExprKind::Integer;
      e.integer = t.integer;
      ++pos_;
      return e;
    }
    if (is_symbol("-") && peek(1).type == TokenType::Integer) {
      e.kind = ExprKind::Integer;
      e.integer = -peek(1).integer;
      pos_ += 2;
      return e;
    }
    if (t.type == TokenType::Identifier && iequals(t.text, "DATE") && peek(1).type == TokenType::String) {
      auto d = Date::parse(peek(1).value);
      if (!d) fail(peek(1), "invalid DATE literal; expected 'YYYY-MM-DD'");
      e.kind = ExprKind::Date;
      e.date = *d;
      pos_ += 2;
      return e;
    }
    fail(t, "expected a literal but found " + describe(t));
  }

  Expr expr() {
    const Token& t = peek();
    if (t.type == TokenType::String || t.type == TokenType::Integer || is_symbol("-") ||
        (t.type == TokenType::Identifier && iequals(t.text, "DATE") && peek(1).type == TokenType::String))
      return literal_value();
    if (t.type == TokenType::Identifier && is_symbol("(", 1)) return function_call();
    if (is_name_token()) {
      Expr e;
      e.kind = ExprKind::Column;
      e.at.offset = t.offset;
      e.name = t.value;
      ++pos_;
      while (is_symbol(".") && is_name_token(1)) {
        ++pos_;
        e.qualifier += (e.qualifier.empty() ? "" : ".") + e.name;
        e.name = peek().value;
        e.at.offset = peek().offset;
        ++pos_;
      }
      return e;
    }
    fail(t, "expected an expression but found " + describe(t));
  }

  Expr function_call() {
    const Token& name_tok = peek();
    const std::string name = lowercase(name_tok.text);
    Expr e;
    e.at.offset = name_tok.offset;
    pos_ += 2;  // name and '('
    if (name == "lower" || name == "upper") {
      e.kind = name == "lower" ? ExprKind::Lower : ExprKind::Upper;
      e.args.push_back(expr());
    } else if (name == "count") {
      if (accept_symbol("*")) {
        e.kind = ExprKind::CountStar;
      } else if (accept_keyword("DISTINCT")) {
        e.kind = ExprKind::CountDistinct;
        const Token& arg = peek();
        Expr col = expr();
        if (col.kind != ExprKind::Column) fail(arg, "COUNT(DISTINCT ...) accepts a column name only");
        e.args.push_back(std::move(col));
      } else {
        e.kind = ExprKind::Count;
        e.args.push_back(expr());
      }
    } else if (name == "regexp_contains") {
      fail(name_tok, "REGEXP_CONTAINS is only supported as a WHERE condition");
    } else {
      fail(name_tok, "unsupported function '" + name_tok.text + "'",
           "supported functions are LOWER, UPPER, COUNT and REGEXP_CONTAINS");
    }
    expect_symbol(")");
    return e;
  }

  Predicate predicate() { return disjunction(); }

  Predicate disjunction() {
    std::vector<Predicate> parts;
    const std::size_t at = peek().offset;
    parts.push_back(conjunction());
    while (accept_keyword("OR")) parts.push_back(conjunction());
    if (parts.size() == 1) return std::move(parts.front());
    Predicate p = Predicate::conjunction(PredKind::Or, std::move(parts));
    p.at.offset = at;
    return p;
  }

  Predicate conjunction() {
    std::vector<Predicate> parts;
    const std::size_t at = peek().offset;
    parts.push_back(negation());
    while (accept_keyword("AND")) parts.push_back(negation());
    if (parts.size() == 1) return std::move(parts.front());
    Predicate p = Predicate::conjunction(PredKind::And, std::move(parts));
    p.at.offset = at;
    return p;
  }

  Predicate negation() {
    const std::size_t at = peek().offset;
    if (accept_keyword("NOT")) {
      Predicate p = Predicate::negation(negation());
      p.at.offset = at;
      return p;
    }
    return primary_predicate();
  }

  std::string pattern_literal(const char* context) {
    const Token& t = peek();
    if (t.type != TokenType::String) fail(t, std::string(context) + " expects a string literal pattern");
    ++pos_;
    return t.value;
  }

  Predicate primary_predicate() {
    const Token& t = peek();
    if (accept_symbol("(")) {
      Predicate inner = predicate();
      expect_symbol(")");
      return inner;
    }
    if (t.type == TokenType::Identifier && iequals(t.text, "REGEXP_CONTAINS") && is_symbol("(", 1)) {
      pos_ += 2;
      Expr subject = expr();
      expect_symbol(",");
      std::string pattern = pattern_literal("REGEXP_CONTAINS");
      expect_symbol(")");
      Predicate p = Predicate::regexp_contains(std::move(subject), std::move(pattern));
      p.at.offset = t.offset;
      return p;
    }
    Expr lhs = expr();
    const Token& op_tok = peek();
    Predicate p;
    if (op_tok.type == TokenType::Symbol) {
      static const std::pair<std::string_view, CmpOp> kOps[] = {
          {"=", CmpOp::Eq}, {"!=", CmpOp::Ne}, {"<>", CmpOp::Ne}, {"<", CmpOp::Lt},
          {"<=", CmpOp::Le}, {">", CmpOp::Gt}, {">=", CmpOp::Ge}};
      for (const auto& [spelling, op] : kOps) {
        if (op_tok.text == spelling) {
          ++pos_;
          p = Predicate::compare(std::move(lhs), op, expr());
          p.at.offset = t.offset;
          return p;
        }
      }
    }
    bool negated = false;
    if (is_keyword("NOT") && (is_keyword("LIKE", 1) || is_keyword("IN", 1))) {
      negated = true;
      ++pos_;
    }
    if (accept_keyword("LIKE")) {
      p = Predicate::like(std::move(lhs), pattern_literal("LIKE"), negated);
    } else if (accept_keyword("IN")) {
      expect_symbol("(");
      std::vector<Expr> literals;
      literals.push_back(literal_value());
      while (accept_symbol(",")) literals.push_back(literal_value());
      expect_symbol(")");
      p = Predicate::in(std::move(lhs), std::move(literals), negated);
    } else if (accept_keyword("IS")) {
      bool is_not = accept_keyword("NOT");
      expect_keyword("NULL");
      p = Predicate::is_null(std::move(lhs), is_not);
    } else {
      fail(op_tok, "expected a comparison operator, LIKE, IN or IS after expression but found " +
                       describe(op_tok));
    }
    p.at.offset = t.offset;
    return p;
  }

  std::string_view src_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

QueryAst parse_query(std::string_view sql_text) { return Parser(sql_text).parse(); }

}  // namespace cohortq::sql
