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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cohortq/catalog.hpp"
#include "cohortq/sql/ast.hpp"
#include "cohortq/sql/like.hpp"
#include "cohortq/sql/regex.hpp"

namespace cohortq::sql {

enum class BoundKind { Column, Literal, Lower, Upper, Count, CountStar, CountDistinct };

struct BoundExpr {
  BoundKind kind = BoundKind::Literal;
  ColumnType type = ColumnType::Text;
  std::size_t column = 0;  // Column, CountDistinct
  Value literal;           // Literal
  std::vector<BoundExpr> args;

  bool is_aggregate() const {
    return kind == BoundKind::Count || kind == BoundKind::CountStar || kind == BoundKind::CountDistinct;
  }
  bool operator==(const BoundExpr&) const = default;
};

struct BoundPredicate {
  PredKind kind = PredKind::Compare;
  CmpOp op = CmpOp::Eq;
  bool negated = false;
  std::vector<BoundExpr> operands;  // literals already coerced to the subject type
  std::shared_ptr<const Regex> regex;
  std::shared_ptr<const LikePattern> like;
  std::vector<BoundPredicate> children;
};

struct OutputColumn {
  std::string name;
  ColumnType type = ColumnType::Text;
  BoundExpr expr;
};

struct SortKey {
  /// Index into outputs, or none when sorting by a non-projected expression.
  std::optional<std::size_t> output;
  BoundExpr expr;
  bool descending = false;
};

/// Validated, executable form of a QueryAst against one catalog table.
struct QueryPlan {
  std::string table_name;  // canonical name of the resolved table
  std::optional<BoundPredicate> filter;
  /// Grouped execution: GROUP BY present or any aggregate in the SELECT list.
  bool aggregate = false;
  std::vector<std::size_t> group_columns;
  std::vector<OutputColumn> outputs;
  bool distinct = false;
  std::vector<SortKey> order;
  std::optional<std::int64_t> limit;
};

/// Resolves names and types of `ast` against `catalog`.  Throws
/// QueryException with BindError or PatternError.
QueryPlan bind_query(const QueryAst& ast, const Catalog& catalog);

/// Nearest candidate within edit distance 3 (case-insensitive), if any.
std::optional<std::string> nearest_name(std::string_view name, const std::vector<std::string>& candidates);

}  // namespace cohortq::sql
