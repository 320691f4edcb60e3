// Copyright 2026 The Wikidense Authors.
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

#include <charconv>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "wikidense/base.hpp"
#include "wikidense/text.hpp"

namespace wikidense::tsv {

// Calls fn(fields, line_number) for every non-empty line. Lines must have
// exactly `columns` tab-separated fields.
template <typename Fn>
void for_each_row(std::istream& in, std::size_t columns, std::string_view source, Fn&& fn) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != columns) {
      throw InputError(std::string(source) + ":" + std::to_string(line_number) + ": expected " +
                       std::to_string(columns) + " fields, got " + std::to_string(fields.size()));
    }
    fn(fields, line_number);
  }
}

inline std::uint64_t parse_uint(std::string_view field, std::string_view source, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw InputError(std::string(source) + ":" + std::to_string(line) + ": not a non-negative integer: '" +
                     std::string(field) + "'");
  }
  return value;
}

inline void require_nonempty(std::string_view field, std::string_view what, std::string_view source,
                             std::size_t line) {
  if (field.empty()) {
    throw InputError(std::string(source) + ":" + std::to_string(line) + ": empty " + std::string(what));
  }
}

// Shortest decimal text that parses back to the same double.
inline std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace wikidense::tsv
