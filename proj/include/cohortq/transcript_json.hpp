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

#include "cohortq/pipeline.hpp"
#include "json.hpp"

namespace cohortq {

/// Field layout is documented in docs/transcript.md.
nlohmann::json to_json(const sql::ResultTable& table);
sql::ResultTable result_table_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const sql::QueryError& error);
sql::QueryError query_error_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const CorrectionTranscript& transcript);
CorrectionTranscript transcript_from_json(const nlohmann::json& doc);

/// JSON value of one cell: Integer -> number, Text/Date -> string, Null -> null.
nlohmann::json cell_to_json(const Value& value);
/// Inverse of cell_to_json for a cell of the given column type.
Value cell_from_json(const nlohmann::json& cell, ColumnType type);

}  // namespace cohortq
