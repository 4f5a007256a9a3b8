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
#include <optional>
#include <string>
#include <string_view>

#include "cohortq/errors.hpp"

namespace cohortq::sql {

enum class ErrorKind { LexError, ParseError, BindError, PatternError, LimitError };

/// Coarse failure group. The engine never yields Semantic: a query that runs
/// but answers the wrong question can only be judged by a person.
enum class ErrorGroup { Syntax, Semantic, Resource };

std::string_view to_string(ErrorKind kind);
std::string_view to_string(ErrorGroup group);
std::optional<ErrorKind> parse_error_kind(std::string_view name);

struct SourcePosition {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, in bytes
  std::string token;       // offending token text, may be empty at end of input
  std::string line_text;   // full source line for the caret display

  bool operator==(const SourcePosition&) const = default;
};

struct QueryError {
  ErrorKind kind = ErrorKind::ParseError;
  std::string message;
  std::optional<SourcePosition> position;
  std::optional<std::string> hint;

  bool operator==(const QueryError&) const = default;
};

/// Thrown by parse/bind/evaluate; carries the structured error.
class QueryException : public Error {
 public:
  explicit QueryException(QueryError error);
  const QueryError& error() const { return error_; }

 private:
  QueryError error_;
};

ErrorGroup classify_error(const QueryError& error);

/// Renders the error as the fixed multi-line block fed back to the model:
///
///   BindError: unknown column 'Modalty'
///   at line 1, column 8, near 'Modalty'
///     SELECT Modalty FROM dicom_all
///            ^
///   hint: did you mean 'Modality'?
std::string format_error(const QueryError& error);

/// Builds a position for byte `offset` of `source`.
SourcePosition position_at(std::string_view source, std::size_t offset, std::string token);

}  // namespace cohortq::sql
