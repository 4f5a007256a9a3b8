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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace cohortq {

enum class ColumnType { Text, Integer, Date };

std::string_view to_string(ColumnType type);
std::optional<ColumnType> parse_column_type(std::string_view name);

/// Calendar date without time zone. Ordering is chronological.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;

  /// Parses strict YYYY-MM-DD, validating month lengths and leap years.
  static std::optional<Date> parse(std::string_view text);
  std::string to_string() const;
};

struct Null {
  auto operator<=>(const Null&) const = default;
};

/// A single catalog or result cell.
class Value {
 public:
  Value() = default;
  Value(Null) {}
  explicit Value(std::string text) : data_(std::move(text)) {}
  explicit Value(std::int64_t number) : data_(number) {}
  explicit Value(Date date) : data_(date) {}

  bool is_null() const { return std::holds_alternative<Null>(data_); }
  bool is_text() const { return std::holds_alternative<std::string>(data_); }
  bool is_integer() const { return std::holds_alternative<std::int64_t>(data_); }
  bool is_date() const { return std::holds_alternative<Date>(data_); }

  const std::string& text() const { return std::get<std::string>(data_); }
  std::int64_t integer() const { return std::get<std::int64_t>(data_); }
  const Date& date() const { return std::get<Date>(data_); }

  /// Whether the cell is Null or holds a value of `type`.
  bool conforms_to(ColumnType type) const;

  /// Cell rendered as text; Null renders as the empty string.
  std::string to_display() const;

  bool operator==(const Value&) const = default;

  /// Total order used for sorting and grouping: Null sorts after everything,
  /// then by alternative, then by value.
  friend std::strong_ordering total_order(const Value& a, const Value& b);

 private:
  std::variant<Null, std::string, std::int64_t, Date> data_;
};

struct ValueHash {
  std::size_t operator()(const Value& v) const;
};

}  // namespace cohortq
