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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cohortq {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// "sha256:<hex>" over the length-prefixed contents of each file, in order.
std::string digest_files(const std::vector<std::filesystem::path>& files);

std::string read_file(const std::filesystem::path& path);

}  // namespace cohortq
