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

#include "cohortq/sql/like.hpp"

#include "cohortq/sql/regex.hpp"

namespace cohortq::sql {

LikePattern::LikePattern(std::string_view pattern) : pattern_(decode_utf8(pattern)) {}

bool LikePattern::matches(std::string_view text) const {
  return matches_code_points(decode_utf8(text));
}

bool LikePattern::matches_code_points(std::u32string_view s) const {
  // Greedy scan that backtracks to the most recent '%'.
  std::size_t p = 0, t = 0;
  std::size_t star = std::u32string::npos, resume = 0;
  while (t < s.size()) {
    if (p < pattern_.size() && pattern_[p] == U'%') {
      star = p++;
      resume = t;
    } else if (p < pattern_.size() && (pattern_[p] == U'_' || pattern_[p] == s[t])) {
      ++p;
      ++t;
    } else if (star != std::u32string::npos) {
      p = star + 1;
      t = ++resume;
    } else {
      return false;
    }
  }
  while (p < pattern_.size() && pattern_[p] == U'%') ++p;
  return p == pattern_.size();
}

}  // namespace cohortq::sql
