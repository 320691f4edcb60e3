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


#include "wikidense/text.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "wikidense/tsv.hpp"

namespace wikidense::text {
namespace {

TEST(Utf8, DecodesMultibyteSequences) {
  const std::string s = "a\xC3\xA9\xE2\x82\xAC\xF0\x9F\x98\x80";  // a é € 😀
  EXPECT_EQ(to_u32(s), (std::u32string{U'a', 0xE9, 0x20AC, 0x1F600}));
}

TEST(Utf8, InvalidBytesBecomeReplacementCharacters) {
  EXPECT_EQ(to_u32("\xFF" "a"), (std::u32string{kReplacementChar, U'a'}));
  EXPECT_EQ(to_u32("\xC3"), (std::u32string{kReplacementChar}));
  EXPECT_EQ(to_u32("\xE2\x82" "x"), (std::u32string{kReplacementChar, kReplacementChar, U'x'}));
}

TEST(Utf8, EncodeDecodeRoundTrip) {
  for (char32_t cp : {0x41u, 0x7Fu, 0x80u, 0x7FFu, 0x800u, 0xFFFFu, 0x10000u, 0x10FFFFu}) {
    std::string encoded;
    append_utf8(encoded, cp);
    std::size_t pos = 0;
    EXPECT_EQ(decode_utf8(encoded, pos), cp);
    EXPECT_EQ(pos, encoded.size());
  }
}

TEST(Fold, LowercasesCoveredScripts) {
  EXPECT_EQ(fold("Apple"), "apple");
  EXPECT_EQ(fold("\xC3\x89" "COLE"), "\xC3\xA9" "cole");  // ÉCOLE
  EXPECT_EQ(fold("\xC5\xBD"), "\xC5\xBE");                 // Ž
  EXPECT_EQ(fold("\xCE\xA3"), "\xCF\x83");                 // Σ
  EXPECT_EQ(fold("\xD0\x9C\xD0\x9E\xD0\xA1"), "\xD0\xBC\xD0\xBE\xD1\x81");  // МОС
  EXPECT_EQ(fold("\xD0\x81"), "\xD1\x91");                 // Ё
  EXPECT_EQ(fold("\xD8\xA8"), "\xD8\xA8");                 // Arabic is caseless
  EXPECT_EQ(fold("u.s.a"), "u.s.a");
}

TEST(Fold, IsIdempotent) {
  for (char32_t cp = 0; cp < 0x500; ++cp) EXPECT_EQ(fold(fold(cp)), fold(cp)) << static_cast<unsigned>(cp);
}

TEST(Fold, UppercaseDetection) {
  EXPECT_TRUE(is_upper(U'B'));
  EXPECT_FALSE(is_upper(U'b'));
  EXPECT_FALSE(is_upper(U'1'));
  EXPECT_TRUE(is_upper(0x416));  // Ж
}

TEST(Split, KeepsEmptyFields) {
  EXPECT_EQ(split("a\t\tb", '\t'), (std::vector<std::string_view>{"a", "", "b"}));
  EXPECT_EQ(split("", '\t'), (std::vector<std::string_view>{""}));
}

TEST(NormalizeTitle, UnderscoresWhitespaceAndFragments) {
  EXPECT_EQ(normalize_title("Vlade_Divac"), "Vlade Divac");
  EXPECT_EQ(normalize_title("  New   York\tCity "), "New York City");
  EXPECT_EQ(normalize_title("Serbia#History"), "Serbia");
  EXPECT_EQ(normalize_title("__"), "");
  EXPECT_EQ(normalize_title("Caf\xC3\xA9_de_Flore"), "Caf\xC3\xA9 de Flore");
}

TEST(Tsv, RejectsWrongColumnCount) {
  std::istringstream in("a\tb\n\nc\n");
  std::vector<std::string> seen;
  EXPECT_THROW(tsv::for_each_row(in, 2, "t.tsv", [&](const auto& f, std::size_t) { seen.emplace_back(f[0]); }),
               InputError);
  EXPECT_EQ(seen, std::vector<std::string>{"a"});
}

TEST(Tsv, StripsCarriageReturns) {
  std::istringstream in("a\tb\r\n");
  tsv::for_each_row(in, 2, "t.tsv", [&](const auto& f, std::size_t line) {
    EXPECT_EQ(f[1], "b");
    EXPECT_EQ(line, 1u);
  });
}

TEST(Tsv, ParseUint) {
  EXPECT_EQ(tsv::parse_uint("42", "s", 1), 42u);
  EXPECT_THROW(tsv::parse_uint("-1", "s", 1), InputError);
  EXPECT_THROW(tsv::parse_uint("4x", "s", 1), InputError);
  EXPECT_THROW(tsv::parse_uint("", "s", 1), InputError);
}

TEST(Tsv, FormatDoubleRoundTrips) {
  EXPECT_EQ(tsv::format_double(0.4), "0.4");
  EXPECT_EQ(tsv::format_double(1.0), "1");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(tsv::format_double(third)), third);
}

}  // namespace
}  // namespace wikidense::text
