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

#include <algorithm>
#include <set>

#include "cohortq/eval/levenshtein.hpp"
#include "cohortq/sql/error.hpp"
#include "cohortq/sql/plan.hpp"

namespace cohortq::sql {

std::optional<std::string> nearest_name(std::string_view name, const std::vector<std::string>& candidates) {
  constexpr std::size_t kMaxHintDistance = 3;
  std::optional<std::string> best;
  std::size_t best_distance = kMaxHintDistance + 1;
  const std::string needle = lowercase(name);
  for (const auto& candidate : candidates) {
    std::size_t d = eval::levenshtein(needle, lowercase(candidate));
    if (d < best_distance) {
      best_distance = d;
      best = candidate;
    }
  }
  return best;
}

namespace {

std::string final_segment(std::string_view dotted) {
  auto dot = dotted.rfind('.');
  return std::string(dot == std::string_view::npos ? dotted : dotted.substr(dot + 1));
}

class Binder {
 public:
  Binder(const QueryAst& ast, const Catalog& catalog) : ast_(ast), catalog_(catalog) {}

  QueryPlan run() {
    resolve_table();
    QueryPlan plan;
    plan.table_name = schema_->table_name;
    plan.distinct = ast_.distinct;
    plan.limit = ast_.limit;

    if (ast_.where) plan.filter = bind_predicate(*ast_.where);

    for (const auto& g : ast_.group_by) {
      std::size_t idx = resolve_column(g);
      if (std::find(plan.group_columns.begin(), plan.group_columns.end(), idx) == plan.group_columns.end())
        plan.group_columns.push_back(idx);
    }
    plan.aggregate = !ast_.group_by.empty() ||
                     std::any_of(ast_.select_list.begin(), ast_.select_list.end(),
                                 [](const SelectItem& s) { return !s.star && s.expr.contains_aggregate(); });
    group_set_ = std::set<std::size_t>(plan.group_columns.begin(), plan.group_columns.end());

    std::size_t anonymous = 0;
    for (const auto& item : ast_.select_list) {
      if (item.star) {
        if (plan.aggregate)
          bind_error("SELECT * cannot be combined with GROUP BY or aggregate functions", ast_.from_at.offset,
                     "*", "list the grouped columns explicitly");
        for (std::size_t c = 0; c < schema_->columns.size(); ++c) {
          BoundExpr col;
          col.kind = BoundKind::Column;
          col.column = c;
          col.type = schema_->columns[c].type;
          plan.outputs.push_back({schema_->columns[c].name, col.type, col});
          aliases_.push_back({});
        }
        continue;
      }
      BoundExpr e = bind_expr(item.expr, /*allow_aggregate=*/true);
      if (plan.aggregate) check_grouped(item.expr);
      std::string name = item.alias;
      if (name.empty()) {
        name = item.expr.kind == ExprKind::Column ? schema_->columns[e.column].name
                                                  : "f" + std::to_string(anonymous++) + "_";
      }
      plan.outputs.push_back({name, e.type, e});
      aliases_.push_back(item.alias);
    }

    for (const auto& item : ast_.order_by) plan.order.push_back(bind_sort_key(item, plan));
    return plan;
  }

 private:
  [[noreturn]] void bind_error(std::string message, std::size_t offset, std::string token,
                               std::optional<std::string> hint = std::nullopt,
                               ErrorKind kind = ErrorKind::BindError) const {
    QueryError err;
    err.kind = kind;
    err.message = std::move(message);
    err.position = position_at(ast_.source, offset, std::move(token));
    err.hint = std::move(hint);
    throw QueryException(std::move(err));
  }

  void resolve_table() {
    try {
      schema_ = &catalog_.resolve_table(ast_.from_table);
    } catch (const UnknownTableError& e) {
      std::vector<std::string> names = e.known();
      std::vector<std::string> finals;
      for (const auto& n : names) finals.push_back(final_segment(n));
      std::optional<std::string> hint;
      if (auto near = nearest_name(final_segment(ast_.from_table), finals)) {
        hint = "did you mean '" + *near + "'?";
      } else if (!names.empty()) {
        std::string list;
        for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
        hint = "known tables: " + list;
      }
      bind_error("unknown table '" + ast_.from_table + "'", ast_.from_at.offset, ast_.from_table, hint);
    }
  }

  std::size_t resolve_column(const Expr& e) const {
    if (!e.qualifier.empty()) {
      bool matches = false;
      try {
        matches = &catalog_.resolve_table(e.qualifier) == schema_;
      } catch (const UnknownTableError&) {
      }
      if (!matches) matches = iequals(final_segment(e.qualifier), final_segment(ast_.from_table));
      if (!matches)
        bind_error("unknown table qualifier '" + e.qualifier + "' for column '" + e.name + "'", e.at.offset,
                   e.name, "qualify columns with '" + final_segment(ast_.from_table) + "' or omit the qualifier");
    }
    if (auto idx = schema_->find_column(e.name)) return *idx;
    std::optional<std::string> hint;
    if (auto near = nearest_name(e.name, schema_->column_names())) hint = "did you mean '" + *near + "'?";
    bind_error("unknown column '" + e.name + "'", e.at.offset, e.name, hint);
  }

  BoundExpr literal(const Expr& e) const {
    BoundExpr b;
    b.kind = BoundKind::Literal;
    switch (e.kind) {
      case ExprKind::String:
        b.type = ColumnType::Text;
        b.literal = Value(e.text);
        break;
      case ExprKind::Integer:
        b.type = ColumnType::Integer;
        b.literal = Value(e.integer);
        break;
      default:
        b.type = ColumnType::Date;
        b.literal = Value(e.date);
        break;
    }
    return b;
  }

  static std::string function_name(ExprKind kind) {
    switch (kind) {
      case ExprKind::Lower: return "LOWER";
      case ExprKind::Upper: return "UPPER";
      default: return "COUNT";
    }
  }

  BoundExpr bind_expr(const Expr& e, bool allow_aggregate) const {
    BoundExpr b;
    switch (e.kind) {
      case ExprKind::Column:
        b.kind = BoundKind::Column;
        b.column = resolve_column(e);
        b.type = schema_->columns[b.column].type;
        return b;
      case ExprKind::String:
      case ExprKind::Integer:
      case ExprKind::Date:
        return literal(e);
      case ExprKind::Lower:
      case ExprKind::Upper: {
        b.kind = e.kind == ExprKind::Lower ? BoundKind::Lower : BoundKind::Upper;
        BoundExpr arg = bind_expr(e.args.at(0), allow_aggregate);
        if (arg.type != ColumnType::Text)
          bind_error(function_name(e.kind) + " expects a Text argument, got " + std::string(to_string(arg.type)),
                     e.at.offset, function_name(e.kind));
        b.type = ColumnType::Text;
        b.args.push_back(std::move(arg));
        return b;
      }
      case ExprKind::Count:
      case ExprKind::CountStar:
      case ExprKind::CountDistinct: {
        if (!allow_aggregate)
          bind_error("aggregate function COUNT is not allowed here", e.at.offset, "COUNT",
                     "filter on aggregates is not supported; aggregates may appear in SELECT and ORDER BY");
        b.kind = e.kind == ExprKind::Count       ? BoundKind::Count
                 : e.kind == ExprKind::CountStar ? BoundKind::CountStar
                                                 : BoundKind::CountDistinct;
        b.type = ColumnType::Integer;
        if (e.kind == ExprKind::CountDistinct) {
          b.column = resolve_column(e.args.at(0));
        } else if (e.kind == ExprKind::Count) {
          if (e.args.at(0).contains_aggregate())
            bind_error("aggregate functions cannot be nested", e.at.offset, "COUNT");
          b.args.push_back(bind_expr(e.args.at(0), false));
        }
        return b;
      }
    }
    return b;
  }

  void check_grouped(const Expr& e) const {
    if (e.is_aggregate()) return;
    if (e.kind == ExprKind::Column) {
      std::size_t idx = resolve_column(e);
      if (!group_set_.count(idx))
        bind_error("column '" + e.name + "' must appear in GROUP BY or be used in an aggregate function",
                   e.at.offset, e.name, "add '" + schema_->columns[idx].name + "' to the GROUP BY clause");
      return;
    }
    for (const auto& a : e.args) check_grouped(a);
  }

  // Coerces a literal operand to `target` (string literal -> Date).
  BoundExpr coerce(const Expr& ast_expr, BoundExpr b, ColumnType target) const {
    if (b.kind != BoundKind::Literal || b.type == target) return b;
    if (b.type == ColumnType::Text && target == ColumnType::Date) {
      auto d = Date::parse(b.literal.text());
      if (!d)
        bind_error("invalid date literal '" + b.literal.text() + "'", ast_expr.at.offset, b.literal.text(),
                   "dates are written 'YYYY-MM-DD'");
      b.literal = Value(*d);
      b.type = ColumnType::Date;
    }
    return b;
  }

  [[noreturn]] void type_mismatch(const Expr& at, ColumnType lhs, ColumnType rhs) const {
    std::optional<std::string> hint;
    if (lhs == ColumnType::Text && rhs == ColumnType::Integer) hint = "quote the value, e.g. '" +
                                                                     std::to_string(at.integer) + "'";
    bind_error("cannot compare " + std::string(to_string(lhs)) + " with " + std::string(to_string(rhs)),
               at.at.offset, pretty_token(at), hint);
  }

  static std::string pretty_token(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Column: return e.name;
      case ExprKind::String: return "'" + e.text + "'";
      case ExprKind::Integer: return std::to_string(e.integer);
      default: return {};
    }
  }

  std::shared_ptr<const Regex> compile_regex(const Expr& pattern_expr) const {
    try {
      return std::make_shared<const Regex>(Regex::compile(pattern_expr.text));
    } catch (const RegexSyntaxError& e) {
      bind_error("invalid regular expression " + quote_for_message(pattern_expr.text) + ": " + e.what() +
                     " (at pattern offset " + std::to_string(e.offset()) + ")",
                 pattern_expr.at.offset, pattern_expr.text,
                 "supported syntax: literals, ., [...], \\d \\w \\s, |, (...), *, +, ?, ^, $ and a leading (?i)",
                 ErrorKind::PatternError);
    }
  }

  static std::string quote_for_message(const std::string& s) { return "'" + s + "'"; }

  BoundPredicate bind_predicate(const Predicate& p) const {
    BoundPredicate b;
    b.kind = p.kind;
    b.op = p.op;
    b.negated = p.negated;
    switch (p.kind) {
      case PredKind::And:
      case PredKind::Or:
      case PredKind::Not:
        for (const auto& c : p.children) b.children.push_back(bind_predicate(c));
        return b;
      case PredKind::Compare: {
        const Expr& l = p.operands.at(0);
        const Expr& r = p.operands.at(1);
        BoundExpr lb = bind_expr(l, false);
        BoundExpr rb = bind_expr(r, false);
        lb = coerce(l, std::move(lb), rb.type);
        rb = coerce(r, std::move(rb), lb.type);
        if (lb.type != rb.type) type_mismatch(r.kind == ExprKind::Column ? l : r, lb.type, rb.type);
        b.operands = {std::move(lb), std::move(rb)};
        return b;
      }
      case PredKind::Like: {
        BoundExpr subject = bind_expr(p.operands.at(0), false);
        if (subject.type != ColumnType::Text)
          bind_error("LIKE expects a Text operand, got " + std::string(to_string(subject.type)),
                     p.operands.at(0).at.offset, pretty_token(p.operands.at(0)));
        b.like = std::make_shared<const LikePattern>(p.operands.at(1).text);
        b.operands = {std::move(subject), literal(p.operands.at(1))};
        return b;
      }
      case PredKind::RegexpContains: {
        BoundExpr subject = bind_expr(p.operands.at(0), false);
        if (subject.type != ColumnType::Text)
          bind_error("REGEXP_CONTAINS expects a Text operand, got " + std::string(to_string(subject.type)),
                     p.operands.at(0).at.offset, pretty_token(p.operands.at(0)));
        b.regex = compile_regex(p.operands.at(1));
        b.operands = {std::move(subject), literal(p.operands.at(1))};
        return b;
      }
      case PredKind::In: {
        BoundExpr subject = bind_expr(p.operands.at(0), false);
        ColumnType type = subject.type;
        b.operands.push_back(std::move(subject));
        for (std::size_t i = 1; i < p.operands.size(); ++i) {
          BoundExpr lit = coerce(p.operands[i], literal(p.operands[i]), type);
          if (lit.type != type) type_mismatch(p.operands[i], type, lit.type);
          b.operands.push_back(std::move(lit));
        }
        return b;
      }
      case PredKind::IsNull:
        b.operands.push_back(bind_expr(p.operands.at(0), false));
        return b;
    }
    return b;
  }

  SortKey bind_sort_key(const OrderItem& item, const QueryPlan& plan) const {
    SortKey key;
    key.descending = item.descending;
    const Expr& e = item.expr;
    if (e.kind == ExprKind::Integer) {
      if (e.integer < 1 || static_cast<std::size_t>(e.integer) > plan.outputs.size())
        bind_error("ORDER BY position " + std::to_string(e.integer) + " is out of range; the SELECT list has " +
                       std::to_string(plan.outputs.size()) + " columns",
                   e.at.offset, std::to_string(e.integer));
      key.output = static_cast<std::size_t>(e.integer - 1);
      key.expr = plan.outputs[*key.output].expr;
      return key;
    }
    if (e.kind == ExprKind::Column && e.qualifier.empty()) {
      for (std::size_t i = 0; i < aliases_.size(); ++i) {
        if (!aliases_[i].empty() && iequals(aliases_[i], e.name)) {
          key.output = i;
          key.expr = plan.outputs[i].expr;
          return key;
        }
      }
    }
    BoundExpr bound = bind_expr(e, plan.aggregate);
    for (std::size_t i = 0; i < plan.outputs.size(); ++i) {
      if (plan.outputs[i].expr == bound) {
        key.output = i;
        key.expr = std::move(bound);
        return key;
      }
    }
    if (plan.distinct)
      bind_error("ORDER BY expression must appear in the SELECT list when DISTINCT is used", e.at.offset,
                 pretty_token(e));
    if (plan.aggregate) check_grouped(e);
    key.expr = std::move(bound);
    return key;
  }

  const QueryAst& ast_;
  const Catalog& catalog_;
  const TableSchema* schema_ = nullptr;
  std::set<std::size_t> group_set_;
  std::vector<std::string> aliases_;  // explicit aliases per output, "" when none
};

}  // namespace

QueryPlan bind_query(const QueryAst& ast, const Catalog& catalog) { return Binder(ast, catalog).run(); }

}  // namespace cohortq::sql
