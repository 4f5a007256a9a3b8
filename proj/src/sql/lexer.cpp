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

#include "cohortq/sql/lexer.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include "cohortq/sql/error.hpp"

namespace cohortq::sql {

namespace {

constexpr std::array kReserved = {
    "SELECT", "DISTINCT", "FROM", "WHERE", "GROUP", "BY", "ORDER", "ASC", "DESC",
    "LIMIT",  "AND",      "OR",   "NOT",   "LIKE",  "IN", "IS",    "NULL", "AS",
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

[[noreturn]] void lex_error(std::string_view source, std::size_t offset, std::string token,
                            std::string message, std::optional<std::string> hint = std::nullopt) {
  QueryError err;
  err.kind = ErrorKind::LexError;
  err.message = std::move(message);
  err.position = position_at(source, offset, std::move(token));
  err.hint = std::move(hint);
  throw QueryException(std::move(err));
}

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.type = TokenType::End;
    end.offset = src_.size();
    out.push_back(end);
    return out;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  Token next() {
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if ((c == 'r' || c == 'R') && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\'') {
      ++pos_;
      return string_literal(start, /*raw=*/true);
    }
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      Token t;
      t.offset = start;
      std::string word(src_.substr(start, pos_ - start));
      std::string up = upper(word);
      if (is_reserved_keyword(up)) {
        t.type = TokenType::Keyword;
        t.text = up;
      } else {
        t.type = TokenType::Identifier;
        t.text = word;
      }
      t.value = word;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ < src_.size() && (is_ident_char(src_[pos_]) || src_[pos_] == '.'))
        lex_error(src_, start, std::string(src_.substr(start, pos_ - start + 1)),
                  "malformed numeric literal; only integers are supported");
      Token t;
      t.type = TokenType::Integer;
      t.offset = start;
      t.text = std::string(src_.substr(start, pos_ - start));
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.integer);
      if (ec != std::errc()) lex_error(src_, start, t.text, "integer literal out of range");
      return t;
    }
    if (c == '\'') return string_literal(start, /*raw=*/false);
    if (c == '`') {
      auto close = src_.find('`', pos_ + 1);
      if (close == std::string_view::npos)
        lex_error(src_, start, "`", "unterminated quoted identifier");
      Token t;
      t.type = TokenType::QuotedIdentifier;
      t.offset = start;
      t.value = std::string(src_.substr(pos_ + 1, close - pos_ - 1));
      t.text = "`" + t.value + "`";
      if (t.value.empty()) lex_error(src_, start, t.text, "empty quoted identifier");
      pos_ = close + 1;
      return t;
    }
    if (c == '"')
      lex_error(src_, start, "\"", "unexpected character '\"'",
                "string literals use single quotes, e.g. 'MR'");
    static constexpr std::string_view kTwoChar[] = {"!=", "<>", "<=", ">="};
    for (auto op : kTwoChar) {
      if (src_.substr(pos_, 2) == op) {
        pos_ += 2;
        return symbol(start, std::string(op));
      }
    }
    static constexpr std::string_view kSingle = "(),.*=<>;-";
    if (kSingle.find(c) != std::string_view::npos) {
      ++pos_;
      return symbol(start, std::string(1, c));
    }
    std::string shown(1, c);
    if (static_cast<unsigned char>(c) >= 0x80) {
      // include the whole UTF-8 sequence in the message
      std::size_t end = pos_ + 1;
      while (end < src_.size() && (static_cast<unsigned char>(src_[end]) & 0xC0) == 0x80) ++end;
      shown = std::string(src_.substr(pos_, end - pos_));
    }
    lex_error(src_, start, shown, "illegal character '" + shown + "'");
  }

  Token symbol(std::size_t start, std::string text) {
    Token t;
    t.type = TokenType::Symbol;
    t.offset = start;
    t.text = std::move(text);
    return t;
  }

  // `pos_` points at the opening quote.
  Token string_literal(std::size_t start, bool raw) {
    Token t;
    t.type = TokenType::String;
    t.offset = start;
    ++pos_;
    while (true) {
      if (pos_ >= src_.size())
        lex_error(src_, start, std::string(src_.substr(start, 1 + (raw ? 1 : 0))),
                  "unterminated string literal");
      char c = src_[pos_];
      if (c == '\'') {
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '\'') {
          t.value.push_back('\'');
          pos_ += 2;
          continue;
        }
        ++pos_;
        break;
      }
      if (c == '\\' && !raw && pos_ + 1 < src_.size()) {
        char e = src_[pos_ + 1];
        switch (e) {
          case '\\': t.value.push_back('\\'); break;
          case '\'': t.value.push_back('\''); break;
          case 'n': t.value.push_back('\n'); break;
          case 't': t.value.push_back('\t'); break;
          default:
            // unknown escapes are kept verbatim so '\d' means the regex class
            t.value.push_back('\\');
            t.value.push_back(e);
        }
        pos_ += 2;
        continue;
      }
      if (c == '\\' && raw && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\'') {
        // r'\'' keeps the backslash but does not end the literal
        t.value += "\\'";
        pos_ += 2;
        continue;
      }
      t.value.push_back(c);
      ++pos_;
    }
    t.text = std::string(src_.substr(start, pos_ - start));
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_reserved_keyword(std::string_view up) {
  for (auto k : kReserved)
    if (up == k) return true;
  return false;
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace cohortq::sql
