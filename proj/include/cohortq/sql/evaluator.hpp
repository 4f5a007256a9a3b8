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
#include <span>
#include <string>
#include <vector>

#include "cohortq/catalog.hpp"
#include "cohortq/sql/plan.hpp"

namespace cohortq::sql {

struct ResultTable {
  std::vector<std::string> column_names;
  std::vector<ColumnType> column_types;
  std::vector<std::vector<Value>> rows;

  std::size_t row_count() const { return rows.size(); }
  bool operator==(const ResultTable&) const = default;
};

struct EvalOptions {
  std::size_t max_result_rows = 100000;
  /// Use the OpenMP filter kernel; the serial kernel gives identical output.
  bool parallel = true;
};

/// Runs a bound plan.  Throws QueryException(LimitError) when the result
/// would exceed `options.max_result_rows`.
ResultTable evaluate_query(const QueryPlan& plan, const Catalog& catalog, const EvalOptions& options = {});

/// parse_query + bind_query + evaluate_query.
ResultTable run_query(std::string_view sql_text, const Catalog& catalog, const EvalOptions& options = {});

/// Row-level predicate used by the filter kernels.  Comparisons involving
/// Null are false; NOT simply inverts its operand.
bool matches(const BoundPredicate& pred, const MetadataRow& row);

/// Scalar value of a non-aggregate expression for one row (row may be null
/// for constant expressions).
Value eval_scalar(const BoundExpr& expr, const MetadataRow* row);

}  // namespace cohortq::sql
