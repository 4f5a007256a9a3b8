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
#include <stdexcept>
#include <string>
#include <vector>

namespace cohortq {

/// Base of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaParseError : public Error {
 public:
  using Error::Error;
};

class RowValidationError : public Error {
 public:
  RowValidationError(std::size_t row, std::string column, std::string reason);

  /// 1-based index of the offending data row.
  std::size_t row() const { return row_; }
  const std::string& column() const { return column_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t row_;
  std::string column_;
  std::string reason_;
};

class DuplicateKeyError : public Error {
 public:
  DuplicateKeyError(std::size_t row, std::string column, std::string key);

  std::size_t row() const { return row_; }
  const std::string& key() const { return key_; }

 private:
  std::size_t row_;
  std::string key_;
};

class UnknownTableError : public Error {
 public:
  UnknownTableError(std::string name, std::vector<std::string> known);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& known() const { return known_; }

 private:
  std::string name_;
  std::vector<std::string> known_;
};

class StorageError : public Error {
 public:
  using Error::Error;
};

}  // namespace cohortq
