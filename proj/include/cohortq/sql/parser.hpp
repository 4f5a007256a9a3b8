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

#include <string>
#include <string_view>

#include "cohortq/sql/ast.hpp"

namespace cohortq::sql {

/// Parses one SELECT statement of the supported subset (see docs/sql-subset.md).
/// Throws QueryException with LexError or ParseError.
QueryAst parse_query(std::string_view sql_text);

/// Renders an AST back to SQL text that parses to an equal tree.
std::string pretty_print(const QueryAst& ast);
std::string pretty_print(const Expr& expr);
std::string pretty_print(const Predicate& pred);

/// Single-quoted literal with '' and \\ escaping.
std::string quote_string(std::string_view value);

}  // namespace cohortq::sql
