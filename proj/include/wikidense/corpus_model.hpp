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

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wikidense/base.hpp"
#include "wikidense/text.hpp"

namespace wikidense {

enum class EntityKind : std::uint8_t { kKb, kNil, kMisc };

// Language-independent knowledge-base id (Freebase-style machine id) or one
// of the NIL / MISC sentinels.
class EntityId {
 public:
  static constexpr std::string_view kNilText = "NIL";
  static constexpr std::string_view kMiscText = "MISC";

  static bool is_kb_alphabet(std::string_view value) {
    return !value.empty() && std::all_of(value.begin(), value.end(), [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '/';
    });
  }

  // Default-constructed ids are NIL.
  EntityId() = default;

  static EntityId kb(std::string_view value) {
    if (!is_kb_alphabet(value)) throw InvalidEntityId("invalid entity id '" + std::string(value) + "'");
    return EntityId(EntityKind::kKb, std::string(value));
  }
  static EntityId nil() { return EntityId(EntityKind::kNil, {}); }
  static EntityId misc() { return EntityId(EntityKind::kMisc, {}); }

  // Accepts a KB id or the literal sentinel names.
  static EntityId parse(std::string_view text) {
    if (text == kNilText) return nil();
    if (text == kMiscText) return misc();
    return kb(text);
  }

  EntityKind kind() const { return kind_; }
  bool is_kb() const { return kind_ == EntityKind::kKb; }
  const std::string& value() const { return value_; }

  std::string str() const {
    switch (kind_) {
      case EntityKind::kNil: return std::string(kNilText);
      case EntityKind::kMisc: return std::string(kMiscText);
      default: return value_;
    }
  }

  friend bool operator==(const EntityId&, const EntityId&) = default;
  friend std::strong_ordering operator<=>(const EntityId&, const EntityId&) = default;

 private:
  EntityId(EntityKind kind, std::string value) : kind_(kind), value_(std::move(value)) {}

  EntityKind kind_ = EntityKind::kNil;
  std::string value_;
};

struct Token {
  std::string raw_form;
  bool sentence_break = false;

  friend bool operator==(const Token&, const Token&) = default;
};

// A link present in the page markup. Token span is inclusive.
struct Anchor {
  std::string target_title;
  std::string surface;
  std::size_t start_token = 0;
  std::size_t end_token = 0;

  friend bool operator==(const Anchor&, const Anchor&) = default;
};

struct WikiPage {
  std::string language;
  std::uint64_t page_id = 0;
  std::string title;
  std::vector<Token> tokens;
  std::vector<Anchor> anchors;
  std::optional<std::string> redirect_to;

  bool is_redirect() const { return redirect_to.has_value(); }
};

inline std::string join_tokens(std::span<const Token> tokens) {
  return text::join(tokens, " ", [](const Token& t) -> const std::string& { return t.raw_form; });
}

namespace detail {

inline bool is_edge_punct(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?': case '"':
    case '\'': case '(': case ')': case '[': case ']': case '{': case '}':
      return true;
    default:
      return false;
  }
}

inline bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

// Does the text after `pos` continue with an uppercase letter (skipping
// whitespace and opening punctuation), or end?
inline bool starts_new_sentence(std::string_view text, std::size_t pos) {
  while (pos < text.size()) {
    const char32_t cp = text::decode_utf8(text, pos);
    if (text::is_space(cp)) continue;
    if (cp < 0x80 && is_edge_punct(static_cast<char>(cp))) continue;
    return text::is_upper(cp);
  }
  return true;
}

// Splits `input` into tokens. Words never cross a byte offset listed in
// `cuts` (sorted). Records the byte offset of each token's word when
// `word_starts` is non-null.
inline void tokenize_into(std::string_view input, std::span<const std::size_t> cuts,
                          std::vector<Token>& out, std::vector<std::size_t>* word_starts) {
  std::size_t cut = 0;
  std::size_t word_begin = std::string_view::npos;

  const auto finish_word = [&](std::size_t word_end) {
    if (word_begin == std::string_view::npos) return;
    std::string_view word = input.substr(word_begin, word_end - word_begin);
    std::size_t lo = 0;
    std::size_t hi = word.size();
    while (lo < hi && is_edge_punct(word[lo])) ++lo;
    while (hi > lo && is_edge_punct(word[hi - 1])) --hi;
    const std::string_view tail = (lo == hi) ? word : word.substr(hi);
    const bool terminates = std::any_of(tail.begin(), tail.end(), is_terminator) &&
                            starts_new_sentence(input, word_end);
    if (lo < hi) {
      out.push_back(Token{std::string(word.substr(lo, hi - lo)), false});
      if (word_starts != nullptr) word_starts->push_back(word_begin);
    }
    if (terminates && !out.empty()) out.back().sentence_break = true;
    word_begin = std::string_view::npos;
  };

  for (std::size_t pos = 0; pos < input.size();) {
    while (cut < cuts.size() && cuts[cut] < pos) ++cut;
    if (cut < cuts.size() && cuts[cut] == pos) finish_word(pos);
    const std::size_t at = pos;
    const char32_t cp = text::decode_utf8(input, pos);
    if (text::is_space(cp)) {
      finish_word(at);
    } else if (word_begin == std::string_view::npos) {
      word_begin = at;
    }
  }
  finish_word(input.size());
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool is_heading_line(std::string_view line) {
  line = trim(line);
  return line.size() >= 2 && line.front() == '=' && line.back() == '=';
}

inline bool iequals_prefix(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const char a = s[i];
    const char lower = (a >= 'A' && a <= 'Z') ? static_cast<char>(a + 32) : a;
    if (lower != prefix[i]) return false;
  }
  return true;
}

}  // namespace detail

// Whitespace split, edge punctuation strip, sentence breaks after tokens
// ending in . ! ? when the next word is uppercase or the text ends.
inline std::vector<Token> tokenize(std::string_view input) {
  std::vector<Token> out;
  detail::tokenize_into(input, {}, out, nullptr);
  return out;
}

// Parses the small wiki-markup subset: [[Target]], [[Target|surface]],
// #REDIRECT [[Target]] and heading lines (dropped). Anchor edges always
// fall on token boundaries.
inline WikiPage parse_page(std::string_view raw, std::string_view language, std::uint64_t page_id,
                           std::string_view title = {}) {
  WikiPage page;
  page.language = std::string(language);
  page.page_id = page_id;
  page.title = text::normalize_title(title);

  const std::string_view body = detail::trim(raw.substr(std::min(raw.find_first_not_of(" \t\r\n"), raw.size())));
  if (detail::iequals_prefix(body, "#redirect")) {
    const std::size_t base = static_cast<std::size_t>(body.data() - raw.data());
    const std::size_t open = body.find("[[");
    if (open == std::string_view::npos) throw MalformedMarkup("redirect without target", base);
    const std::size_t close = body.find("]]", open + 2);
    if (close == std::string_view::npos) throw MalformedMarkup("unclosed '[['", base + open);
    std::string_view target = body.substr(open + 2, close - open - 2);
    target = target.substr(0, target.find('|'));
    page.redirect_to = text::normalize_title(target);
    return page;
  }

  struct Segment {
    std::string target;
    std::size_t begin;
    std::size_t end;
  };
  std::string cleaned;
  cleaned.reserve(raw.size());
  std::vector<std::size_t> cuts;
  std::vector<Segment> segments;

  std::size_t pos = 0;
  bool line_start = true;
  while (pos < raw.size()) {
    if (line_start) {
      const std::size_t eol = std::min(raw.find('\n', pos), raw.size());
      if (detail::is_heading_line(raw.substr(pos, eol - pos))) {
        cleaned.push_back('\n');
        pos = eol + 1;
        continue;
      }
      line_start = false;
    }
    if (raw.compare(pos, 2, "[[") == 0) {
      const std::size_t close = raw.find("]]", pos + 2);
      if (close == std::string_view::npos) throw MalformedMarkup("unclosed '[['", pos);
      const std::string_view inner = raw.substr(pos + 2, close - pos - 2);
      if (inner.find("[[") != std::string_view::npos) throw MalformedMarkup("nested '[[' in link", pos);
      const std::size_t bar = inner.find('|');
      const std::string_view target = inner.substr(0, bar);
      const std::string_view surface = bar == std::string_view::npos ? inner : inner.substr(bar + 1);
      std::string normalized = text::normalize_title(target);
      cuts.push_back(cleaned.size());
      const std::size_t begin = cleaned.size();
      cleaned.append(surface);
      cuts.push_back(cleaned.size());
      if (!normalized.empty()) segments.push_back({std::move(normalized), begin, cleaned.size()});
      pos = close + 2;
      continue;
    }
    if (raw[pos] == '\n') line_start = true;
    cleaned.push_back(raw[pos]);
    ++pos;
  }

  std::vector<std::size_t> starts;
  detail::tokenize_into(cleaned, cuts, page.tokens, &starts);
  for (const Segment& seg : segments) {
    const auto first = std::lower_bound(starts.begin(), starts.end(), seg.begin);
    const auto last = std::lower_bound(starts.begin(), starts.end(), seg.end);
    if (first == last) continue;
    Anchor anchor;
    anchor.target_title = seg.target;
    anchor.start_token = static_cast<std::size_t>(first - starts.begin());
    anchor.end_token = static_cast<std::size_t>(last - starts.begin()) - 1;
    anchor.surface = join_tokens(
        std::span(page.tokens).subspan(anchor.start_token, anchor.end_token - anchor.start_token + 1));
    page.anchors.push_back(std::move(anchor));
  }
  return page;
}

// Space-joined surfaces starting at `start`, longest first, lengths
// min(max_len, remaining) down to 1.
inline std::vector<std::string> shingles(std::span<const Token> tokens, std::size_t start, std::size_t max_len) {
  if (start >= tokens.size()) throw std::out_of_range("shingle start past end of token sequence");
  if (max_len == 0) throw std::invalid_argument("shingle length must be at least 1");
  const std::size_t longest = std::min(max_len, tokens.size() - start);
  std::vector<std::string> out;
  out.reserve(longest);
  for (std::size_t len = longest; len >= 1; --len) out.push_back(join_tokens(tokens.subspan(start, len)));
  return out;
}

// One record of the concatenated page stream:
//   \x01<lang>\t<page_id>\t<title>\n<body>
struct PageRecord {
  std::string language;
  std::uint64_t page_id = 0;
  std::string title;
  std::string body;
};

inline std::vector<PageRecord> read_page_stream(std::istream& in, std::string_view source = "<stream>") {
  std::vector<PageRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.front() == '\x01') {
      const auto fields = text::split(std::string_view(line).substr(1), '\t');
      const auto where = std::string(source) + ":" + std::to_string(line_number);
      if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
        throw InputError(where + ": malformed page header");
      }
      std::uint64_t id = 0;
      for (char c : fields[1]) {
        if (c < '0' || c > '9') throw InputError(where + ": page id is not an integer");
        id = id * 10 + static_cast<std::uint64_t>(c - '0');
      }
      records.push_back(PageRecord{std::string(fields[0]), id, std::string(fields[2]), {}});
      continue;
    }
    if (records.empty()) {
      if (line.empty()) continue;
      throw InputError(std::string(source) + ":" + std::to_string(line_number) +
                       ": text before the first page header");
    }
    records.back().body.append(line).push_back('\n');
  }
  return records;
}

inline WikiPage parse_record(const PageRecord& record) {
  return parse_page(record.body, record.language, record.page_id, record.title);
}

}  // namespace wikidense

template <>
struct std::hash<wikidense::EntityId> {
  std::size_t operator()(const wikidense::EntityId& id) const noexcept {
    return std::hash<std::string>()(id.value()) ^ static_cast<std::size_t>(id.kind());
  }
};
