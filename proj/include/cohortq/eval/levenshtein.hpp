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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cohortq::eval {

/// Unit-cost edit distance (insert, delete, substitute) over Unicode scalar
/// values.  Two-row dynamic program, O(|a|·|b|) time, O(|b|) space.
std::size_t levenshtein(std::string_view a, std::string_view b);
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

using StringPair = std::pair<std::string, std::string>;

/// Distances for many pairs.  The parallel variant splits pairs across
/// OpenMP threads; the serial one is the reference it is tested against.
std::vector<std::size_t> levenshtein_batch_serial(const std::vector<StringPair>& pairs);
std::vector<std::size_t> levenshtein_batch_parallel(const std::vector<StringPair>& pairs);

/// Collapses every whitespace run to one space and trims both ends.
std::string collapse_whitespace(std::string_view text);

}  // namespace cohortq::eval
