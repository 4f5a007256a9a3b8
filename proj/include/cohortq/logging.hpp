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

#include <ostream>
#include <string_view>

namespace cohortq {

enum class LogLevel { Debug, Info, Warn, Error };

/// Writes one line "[level] message" to the current sink if `level` passes
/// the threshold.  Thread-safe.
void log(LogLevel level, std::string_view message);

/// Redirects log output (default std::cerr).  Passing nullptr silences it.
void set_log_sink(std::ostream* sink);
void set_log_level(LogLevel level);

}  // namespace cohortq
