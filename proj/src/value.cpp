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

#include "cohortq/value.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <functional>

namespace cohortq {

std::string_view to_string(ColumnType type) {
  switch (type) {
    case ColumnType::Text: return "Text";
    case ColumnType::Integer: return "Integer";
    case ColumnType::Date: return "Date";
  }
  return "Text";
}

std::optional<ColumnType> parse_column_type(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "text" || lower == "string") return ColumnType::Text;
  if (lower == "integer" || lower == "int64" || lower == "int") return ColumnType::Integer;
  if (lower == "date") return ColumnType::Date;
  return std::nullopt;
}

namespace {

bool is_leap(int year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

int days_in_month(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return month == 2 && is_leap(year) ? 29 : kDays[month - 1];
}

std::optional<int> parse_digits(std::string_view text) {
  int out = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    out = out * 10 + (c - '0');
  }
  return out;
}

}  // namespace

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = parse_digits(text.substr(0, 4));
  auto m = parse_digits(text.substr(5, 2));
  auto d = parse_digits(text.substr(8, 2));
  if (!y || !m || !d) return std::nullopt;
  if (*m < 1 || *m > 12 || *d < 1 || *d > days_in_month(*y, *m)) return std::nullopt;
  return Date{*y, *m, *d};
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

bool Value::conforms_to(ColumnType type) const {
  switch (type) {
    case ColumnType::Text: return is_null() || is_text();
    case ColumnType::Integer: return is_null() || is_integer();
    case ColumnType::Date: return is_null() || is_date();
  }
  return false;
}

std::string Value::to_display() const {
  if (is_text()) return text();
  if (is_integer()) return std::to_string(integer());
  if (is_date()) return date().to_string();
  return {};
}

std::strong_ordering total_order(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return a.is_null() <=> b.is_null();  // Null sorts last
  if (a.data_.index() != b.data_.index()) return a.data_.index() <=> b.data_.index();
  if (a.is_text()) {
    int c = a.text().compare(b.text());
    return c <=> 0;
  }
  if (a.is_integer()) return a.integer() <=> b.integer();
  return a.date() <=> b.date();
}

std::size_t ValueHash::operator()(const Value& v) const {
  if (v.is_text()) return std::hash<std::string>{}(v.text());
  if (v.is_integer()) return std::hash<std::int64_t>{}(v.integer()) ^ 0x9e3779b9u;
  if (v.is_date()) {
    const Date& d = v.date();
    return std::hash<int>{}(d.year * 400 + d.month * 31 + d.day) ^ 0x7f4a7c15u;
  }
  return 0x51ed27u;
}

}  // namespace cohortq
