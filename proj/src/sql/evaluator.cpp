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

#include "cohortq/sql/evaluator.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "cohortq/sql/error.hpp"
#include "cohortq/sql/kernels.hpp"
#include "cohortq/sql/parser.hpp"

namespace cohortq::sql {

namespace {

std::string ascii_case(const std::string& s, bool to_upper) {
  std::string out = s;
  for (char& c : out) {
    auto u = static_cast<unsigned char>(c);
    c = static_cast<char>(to_upper ? std::toupper(u) : std::tolower(u));
  }
  return out;
}

bool compare(const Value& a, CmpOp op, const Value& b) {
  if (a.is_null() || b.is_null()) return false;
  auto ord = total_order(a, b);
  switch (op) {
    case CmpOp::Eq: return ord == 0;
    case CmpOp::Ne: return ord != 0;
    case CmpOp::Lt: return ord < 0;
    case CmpOp::Le: return ord <= 0;
    case CmpOp::Gt: return ord > 0;
    case CmpOp::Ge: return ord >= 0;
  }
  return false;
}

struct RowHash {
  std::size_t operator()(const std::vector<Value>& row) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (const auto& v : row) h = (h ^ ValueHash{}(v)) * 0x100000001b3ull;
    return h;
  }
};

// A unit of output: one source row, or one group of rows.
struct Context {
  const MetadataRow* representative = nullptr;
  std::vector<std::size_t> rows;
};

}  // namespace

Value eval_scalar(const BoundExpr& expr, const MetadataRow* row) {
  switch (expr.kind) {
    case BoundKind::Column:
      return row ? (*row)[expr.column] : Value();
    case BoundKind::Literal:
      return expr.literal;
    case BoundKind::Lower:
    case BoundKind::Upper: {
      Value v = eval_scalar(expr.args.at(0), row);
      if (v.is_null()) return v;
      return Value(ascii_case(v.text(), expr.kind == BoundKind::Upper));
    }
    default:
      throw Error("aggregate evaluated in scalar context");
  }
}

bool matches(const BoundPredicate& pred, const MetadataRow& row) {
  switch (pred.kind) {
    case PredKind::And:
      for (const auto& c : pred.children)
        if (!matches(c, row)) return false;
      return true;
    case PredKind::Or:
      for (const auto& c : pred.children)
        if (matches(c, row)) return true;
      return false;
    case PredKind::Not:
      return !matches(pred.children.at(0), row);
    case PredKind::Compare:
      return compare(eval_scalar(pred.operands[0], &row), pred.op, eval_scalar(pred.operands[1], &row));
    case PredKind::Like: {
      Value v = eval_scalar(pred.operands[0], &row);
      if (v.is_null()) return false;
      return pred.like->matches(v.text()) != pred.negated;
    }
    case PredKind::RegexpContains: {
      Value v = eval_scalar(pred.operands[0], &row);
      if (v.is_null()) return false;
      return pred.regex->search(v.text());
    }
    case PredKind::In: {
      Value v = eval_scalar(pred.operands[0], &row);
      if (v.is_null()) return false;
      bool found = false;
      for (std::size_t i = 1; i < pred.operands.size() && !found; ++i) found = v == pred.operands[i].literal;
      return found != pred.negated;
    }
    case PredKind::IsNull:
      return eval_scalar(pred.operands[0], &row).is_null() != pred.negated;
  }
  return false;
}

namespace {

Value eval_in_context(const BoundExpr& expr, const Context& ctx, std::span<const MetadataRow> rows) {
  switch (expr.kind) {
    case BoundKind::CountStar:
      return Value(static_cast<std::int64_t>(ctx.rows.size()));
    case BoundKind::Count: {
      std::int64_t n = 0;
      for (auto r : ctx.rows)
        if (!eval_scalar(expr.args.at(0), &rows[r]).is_null()) ++n;
      return Value(n);
    }
    case BoundKind::CountDistinct: {
      std::unordered_set<Value, ValueHash> seen;
      for (auto r : ctx.rows)
        if (!rows[r][expr.column].is_null()) seen.insert(rows[r][expr.column]);
      return Value(static_cast<std::int64_t>(seen.size()));
    }
    case BoundKind::Lower:
    case BoundKind::Upper: {
      Value v = eval_in_context(expr.args.at(0), ctx, rows);
      if (v.is_null()) return v;
      return Value(ascii_case(v.text(), expr.kind == BoundKind::Upper));
    }
    default:
      return eval_scalar(expr, ctx.representative);
  }
}

std::vector<Context> build_contexts(const QueryPlan& plan, std::span<const MetadataRow> rows,
                                    const std::vector<std::size_t>& selected) {
  std::vector<Context> contexts;
  if (!plan.aggregate) {
    contexts.reserve(selected.size());
    for (auto r : selected) contexts.push_back({&rows[r], {r}});
    return contexts;
  }
  if (plan.group_columns.empty()) {
    Context all;
    all.rows = selected;
    if (!selected.empty()) all.representative = &rows[selected.front()];
    contexts.push_back(std::move(all));
    return contexts;
  }
  // Groups are emitted in order of first appearance.
  std::unordered_map<std::vector<Value>, std::size_t, RowHash> index;
  for (auto r : selected) {
    std::vector<Value> key;
    key.reserve(plan.group_columns.size());
    for (auto c : plan.group_columns) key.push_back(rows[r][c]);
    auto [it, inserted] = index.emplace(std::move(key), contexts.size());
    if (inserted) contexts.push_back({&rows[r], {}});
    contexts[it->second].rows.push_back(r);
  }
  return contexts;
}

}  // namespace

ResultTable evaluate_query(const QueryPlan& plan, const Catalog& catalog, const EvalOptions& options) {
  const Table& table = catalog.table(plan.table_name);
  std::span<const MetadataRow> rows = table.rows;

  const BoundPredicate* pred = plan.filter ? &*plan.filter : nullptr;
  std::vector<std::size_t> selected = options.parallel && rows.size() >= kParallelFilterThreshold
                                          ? filter_rows_parallel(pred, rows)
                                          : filter_rows_serial(pred, rows);

  std::vector<Context> contexts = build_contexts(plan, rows, selected);

  struct Pending {
    std::vector<Value> cells;
    std::vector<Value> keys;
  };
  std::vector<Pending> pending;
  pending.reserve(contexts.size());
  for (const auto& ctx : contexts) {
    Pending p;
    p.cells.reserve(plan.outputs.size());
    for (const auto& out : plan.outputs) p.cells.push_back(eval_in_context(out.expr, ctx, rows));
    for (const auto& key : plan.order)
      p.keys.push_back(key.output ? p.cells[*key.output] : eval_in_context(key.expr, ctx, rows));
    pending.push_back(std::move(p));
  }

  if (plan.distinct) {
    std::unordered_set<std::vector<Value>, RowHash> seen;
    std::vector<Pending> unique;
    for (auto& p : pending)
      if (seen.insert(p.cells).second) unique.push_back(std::move(p));
    pending = std::move(unique);
  }

  if (!plan.order.empty()) {
    std::stable_sort(pending.begin(), pending.end(), [&](const Pending& a, const Pending& b) {
      for (std::size_t k = 0; k < plan.order.size(); ++k) {
        const Value& x = a.keys[k];
        const Value& y = b.keys[k];
        if (x.is_null() || y.is_null()) {
          if (x.is_null() == y.is_null()) continue;
          return y.is_null();  // Nulls last in both directions
        }
        auto ord = total_order(x, y);
        if (ord == 0) continue;
        return plan.order[k].descending ? ord > 0 : ord < 0;
      }
      return false;
    });
  }

  if (plan.limit && static_cast<std::size_t>(*plan.limit) < pending.size())
    pending.resize(static_cast<std::size_t>(*plan.limit));

  if (pending.size() > options.max_result_rows) {
    QueryError err;
    err.kind = ErrorKind::LimitError;
    err.message = "result has " + std::to_string(pending.size()) + " rows, which exceeds max_result_rows = " +
                  std::to_string(options.max_result_rows);
    err.hint = "add a LIMIT clause or a more selective WHERE condition";
    throw QueryException(std::move(err));
  }

  ResultTable result;
  for (const auto& out : plan.outputs) {
    result.column_names.push_back(out.name);
    result.column_types.push_back(out.type);
  }
  result.rows.reserve(pending.size());
  for (auto& p : pending) result.rows.push_back(std::move(p.cells));
  return result;
}

ResultTable run_query(std::string_view sql_text, const Catalog& catalog, const EvalOptions& options) {
  QueryAst ast = parse_query(sql_text);
  QueryPlan plan = bind_query(ast, catalog);
  return evaluate_query(plan, catalog, options);
}

}  // namespace cohortq::sql
