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
#include <string>
#include <string_view>
#include <vector>

namespace cohortq::sql {

enum class TokenType {
  Keyword,
  Identifier,
  QuotedIdentifier,  // `...`
  String,
  Integer,
  Symbol,
  End,
};

struct Token {
  TokenType type = TokenType::End;
  std::string text;   // source spelling; keywords are uppercased
  std::string value;  // decoded string literal / backtick contents
  std::int64_t integer = 0;
  std::size_t offset = 0;
};

/// Splits `source` into tokens, always ending with an End token.
/// Throws QueryException(LexError) on an illegal character or an
/// unterminated literal.
std::vector<Token> tokenize(std::string_view source);

bool is_reserved_keyword(std::string_view upper);

}  // namespace cohortq::sql
