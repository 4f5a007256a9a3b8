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

#include "cohortq/sql/error.hpp"

namespace cohortq::sql {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LexError: return "LexError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BindError: return "BindError";
    case ErrorKind::PatternError: return "PatternError";
    case ErrorKind::LimitError: return "LimitError";
  }
  return "ParseError";
}

std::string_view to_string(ErrorGroup group) {
  switch (group) {
    case ErrorGroup::Syntax: return "Syntax";
    case ErrorGroup::Semantic: return "Semantic";
    case ErrorGroup::Resource: return "Resource";
  }
  return "Syntax";
}

std::optional<ErrorKind> parse_error_kind(std::string_view name) {
  for (auto kind : {ErrorKind::LexError, ErrorKind::ParseError, ErrorKind::BindError,
                    ErrorKind::PatternError, ErrorKind::LimitError})
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

QueryException::QueryException(QueryError error)
    : Error(std::string(to_string(error.kind)) + ": " + error.message), error_(std::move(error)) {}

ErrorGroup classify_error(const QueryError& error) {
  switch (error.kind) {
    case ErrorKind::LexError:
    case ErrorKind::ParseError:
    case ErrorKind::BindError:
    case ErrorKind::PatternError:
      return ErrorGroup::Syntax;
    case ErrorKind::LimitError:
      return ErrorGroup::Resource;
  }
  return ErrorGroup::Syntax;
}

std::string format_error(const QueryError& error) {
  std::string out;
  out += to_string(error.kind);
  out += ": ";
  out += error.message;
  out += '\n';
  if (error.position) {
    const auto& pos = *error.position;
    out += "at line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column);
    if (!pos.token.empty()) out += ", near '" + pos.token + "'";
    out += '\n';
    if (!pos.line_text.empty()) {
      out += "  " + pos.line_text + '\n';
      out += "  " + std::string(pos.column > 0 ? pos.column - 1 : 0, ' ') + "^\n";
    }
  }
  if (error.hint) out += "hint: " + *error.hint + '\n';
  return out;
}

SourcePosition position_at(std::string_view source, std::size_t offset, std::string token) {
  if (offset > source.size()) offset = source.size();
  SourcePosition pos;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < offset; ++i) {
    if (source[i] == '\n') {
      ++pos.line;
      line_start = i + 1;
    }
  }
  pos.column = offset - line_start + 1;
  auto line_end = source.find('\n', line_start);
  if (line_end == std::string_view::npos) line_end = source.size();
  pos.line_text = std::string(source.substr(line_start, line_end - line_start));
  if (!pos.line_text.empty() && pos.line_text.back() == '\r') pos.line_text.pop_back();
  pos.token = std::move(token);
  return pos;
}

}  // namespace cohortq::sql
