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
#include <span>
#include <vector>

#include "cohortq/catalog.hpp"
#include "cohortq/sql/plan.hpp"

namespace cohortq::sql {

/// Indices of rows satisfying `pred`, in load order.  A null predicate
/// selects every row.
std::vector<std::size_t> filter_rows_serial(const BoundPredicate* pred, std::span<const MetadataRow> rows);

/// OpenMP version of filter_rows_serial: predicates are evaluated into a
/// byte mask in parallel, then compacted in order.
std::vector<std::size_t> filter_rows_parallel(const BoundPredicate* pred, std::span<const MetadataRow> rows);

/// Tables smaller than this are filtered serially even when parallel
/// execution is requested.
inline constexpr std::size_t kParallelFilterThreshold = 4096;

}  // namespace cohortq::sql
