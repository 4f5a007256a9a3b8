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

#include "cohortq/sql/kernels.hpp"

#include <cstdint>

#include "cohortq/sql/evaluator.hpp"

namespace cohortq::sql {

std::vector<std::size_t> filter_rows_serial(const BoundPredicate* pred, std::span<const MetadataRow> rows) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!pred || matches(*pred, rows[i])) out.push_back(i);
  return out;
}

std::vector<std::size_t> filter_rows_parallel(const BoundPredicate* pred, std::span<const MetadataRow> rows) {
  const auto n = static_cast<std::ptrdiff_t>(rows.size());
  std::vector<std::uint8_t> mask(rows.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) mask[i] = !pred || matches(*pred, rows[i]);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

}  // namespace cohortq::sql
