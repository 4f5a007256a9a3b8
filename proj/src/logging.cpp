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

#include "cohortq/logging.hpp"

#include <iostream>
#include <mutex>

namespace cohortq {

namespace {

std::mutex g_mutex;
std::ostream* g_sink = &std::cerr;
LogLevel g_level = LogLevel::Info;

std::string_view label(LogLevel level) {
  switch (level) {
    case LogLevel::Debug: return "debug";
    case LogLevel::Info: return "info";
    case LogLevel::Warn: return "warn";
    case LogLevel::Error: return "error";
  }
  return "info";
}

}  // namespace

void log(LogLevel level, std::string_view message) {
  std::lock_guard lock(g_mutex);
  if (!g_sink || level < g_level) return;
  *g_sink << "[" << label(level) << "] " << message << '\n';
}

void set_log_sink(std::ostream* sink) {
  std::lock_guard lock(g_mutex);
  g_sink = sink;
}

void set_log_level(LogLevel level) {
  std::lock_guard lock(g_mutex);
  g_level = level;
}

}  // namespace cohortq
