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

#include "cohortq/errors.hpp"

namespace cohortq::sql {

/// Raised for patterns outside the supported subset or malformed ones.
class RegexSyntaxError : public Error {
 public:
  RegexSyntaxError(std::string message, std::size_t offset)
      : Error(std::move(message)), offset_(offset) {}
  /// Byte offset inside the pattern.
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Compiled regular expression over Unicode scalar values.
///
/// Supported: literals, `.`, classes `[...]` with ranges and negation,
/// `\d \w \s` (and negations), escaped metacharacters, `|`, `( )`, `(?: )`,
/// `* + ?`, `^ $`, and a leading `(?i)` for ASCII case-insensitivity.
/// Matching runs a Pike VM, so time is linear in the subject length.
class Regex {
 public:
  static Regex compile(std::string_view pattern);

  /// Unanchored search: true when any substring matches.
  bool search(std::string_view text) const;

  const std::string& pattern() const { return pattern_; }
  bool case_insensitive() const { return icase_; }

 private:
  enum class Op : std::uint8_t { Char, Any, Class, Split, Jmp, AssertBegin, AssertEnd, Match };
  struct Instr {
    Op op = Op::Match;
    char32_t ch = 0;
    int x = 0;  // jump target / class index
    int y = 0;  // second branch for Split
  };
  struct Range {
    char32_t lo, hi;
  };
  struct CharClass {
    std::vector<Range> ranges;
    bool negated = false;
  };

  friend class RegexCompiler;

  bool class_matches(const CharClass& cls, char32_t c) const;

  std::string pattern_;
  bool icase_ = false;
  std::vector<Instr> program_;
  std::vector<CharClass> classes_;
};

/// Decodes UTF-8 into scalar values; each invalid byte becomes U+FFFD.
std::u32string decode_utf8(std::string_view text);

}  // namespace cohortq::sql
