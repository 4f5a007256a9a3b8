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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cohortq/value.hpp"

namespace cohortq::sql {

/// Byte offset of a node in the query text.  Offsets are diagnostic only and
/// compare equal regardless of value, so structurally identical trees parsed
/// from differently formatted text are equal.
struct SourceOffset {
  std::size_t offset = 0;
  friend bool operator==(const SourceOffset&, const SourceOffset&) { return true; }
};

enum class ExprKind {
  Column,
  String,
  Integer,
  Date,
  Lower,
  Upper,
  Count,          // COUNT(expr): non-null values
  CountStar,      // COUNT(*)
  CountDistinct,  // COUNT(DISTINCT column)
};

struct Expr {
  ExprKind kind = ExprKind::Column;
  std::string qualifier;  // Column: optional dotted table qualifier
  std::string name;       // Column: column name
  std::string text;       // String: decoded literal
  std::int64_t integer = 0;
  Date date;
  std::vector<Expr> args;
  SourceOffset at;

  bool is_aggregate() const {
    return kind == ExprKind::Count || kind == ExprKind::CountStar || kind == ExprKind::CountDistinct;
  }
  bool is_literal() const {
    return kind == ExprKind::String || kind == ExprKind::Integer || kind == ExprKind::Date;
  }
  bool contains_aggregate() const;

  static Expr column(std::string name, std::string qualifier = {});
  static Expr string(std::string value);
  static Expr integer_literal(std::int64_t value);
  static Expr date_literal(Date value);
  static Expr call(ExprKind kind, Expr arg);
  static Expr count_star();

  bool operator==(const Expr&) const = default;
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

enum class PredKind { Compare, Like, In, RegexpContains, IsNull, And, Or, Not };

struct Predicate {
  PredKind kind = PredKind::Compare;
  CmpOp op = CmpOp::Eq;
  bool negated = false;             // NOT LIKE / NOT IN / IS NOT NULL
  std::vector<Expr> operands;       // Compare: lhs, rhs. Like/RegexpContains: subject,
                                    // pattern. In: subject, literals... IsNull: subject.
  std::vector<Predicate> children;  // And/Or: two or more. Not: one.
  SourceOffset at;

  static Predicate compare(Expr lhs, CmpOp op, Expr rhs);
  static Predicate like(Expr subject, std::string pattern, bool negated = false);
  static Predicate in(Expr subject, std::vector<Expr> literals, bool negated = false);
  static Predicate regexp_contains(Expr subject, std::string pattern);
  static Predicate is_null(Expr subject, bool negated = false);
  static Predicate conjunction(PredKind kind, std::vector<Predicate> children);
  static Predicate negation(Predicate child);

  bool operator==(const Predicate&) const = default;
};

struct SelectItem {
  bool star = false;
  Expr expr;
  std::string alias;

  bool operator==(const SelectItem&) const = default;
};

struct OrderItem {
  Expr expr;
  bool descending = false;

  bool operator==(const OrderItem&) const = default;
};

struct QueryAst {
  bool distinct = false;
  std::vector<SelectItem> select_list;
  std::string from_table;  // dotted, backticks removed
  SourceOffset from_at;
  std::optional<Predicate> where;
  std::vector<Expr> group_by;
  std::vector<OrderItem> order_by;
  std::optional<std::int64_t> limit;

  /// Text the tree was parsed from; used for diagnostics, ignored by ==.
  std::string source;

  bool operator==(const QueryAst& other) const {
    return distinct == other.distinct && select_list == other.select_list &&
           from_table == other.from_table && where == other.where && group_by == other.group_by &&
           order_by == other.order_by && limit == other.limit;
  }
};

std::string_view to_string(CmpOp op);

}  // namespace cohortq::sql
