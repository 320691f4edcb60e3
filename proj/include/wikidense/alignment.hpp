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

// Five-metric string alignment between alias phrases and the outlier
// pruning built on top of it.

#include <algorithm>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wikidense/base.hpp"
#include "wikidense/corpus_model.hpp"
#include "wikidense/text.hpp"

namespace wikidense {

struct AlignmentScore {
  double token_jaccard = 0;
  double char3_jaccard = 0;
  double token_edit = 0;
  double char_edit = 0;
  double lcs = 0;
  double mean = 0;
};

// Pre-computed view of one phrase: case-folded tokens and the code points of
// their single-space join.
struct PhraseFeatures {
  std::vector<std::string> tokens;
  std::vector<std::string> token_set;  // sorted, unique
  std::u32string chars;
  std::vector<std::u32string> trigrams;  // sorted, unique
};

inline PhraseFeatures analyze_phrase(std::string_view phrase) {
  PhraseFeatures f;
  for (Token& t : tokenize(phrase)) f.tokens.push_back(text::fold(t.raw_form));
  if (f.tokens.empty()) throw EmptyPhrase("phrase has no tokens: '" + std::string(phrase) + "'");
  f.token_set = f.tokens;
  std::sort(f.token_set.begin(), f.token_set.end());
  f.token_set.erase(std::unique(f.token_set.begin(), f.token_set.end()), f.token_set.end());
  f.chars = text::to_u32(text::join(f.tokens, " "));
  if (f.chars.size() < 3) {
    f.trigrams.push_back(f.chars);
  } else {
    for (std::size_t i = 0; i + 3 <= f.chars.size(); ++i) f.trigrams.push_back(f.chars.substr(i, 3));
  }
  std::sort(f.trigrams.begin(), f.trigrams.end());
  f.trigrams.erase(std::unique(f.trigrams.begin(), f.trigrams.end()), f.trigrams.end());
  return f;
}

namespace detail {

template <typename T>
double sorted_jaccard(const std::vector<T>& a, const std::vector<T>& b) {
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t all = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(all);
}

// Classic insert/delete/substitute distance, two rolling rows.
template <typename Seq>
std::size_t levenshtein(const Seq& a, const Seq& b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

template <typename Seq>
std::size_t lcs_length(const Seq& a, const Seq& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline double similarity_from_distance(std::size_t distance, std::size_t a_len, std::size_t b_len) {
  return 1.0 - static_cast<double>(distance) / static_cast<double>(std::max(a_len, b_len));
}

}  // namespace detail

inline AlignmentScore align(const PhraseFeatures& a, const PhraseFeatures& b) {
  AlignmentScore s;
  s.token_jaccard = detail::sorted_jaccard(a.token_set, b.token_set);
  s.char3_jaccard = detail::sorted_jaccard(a.trigrams, b.trigrams);
  s.token_edit = detail::similarity_from_distance(detail::levenshtein(a.tokens, b.tokens), a.tokens.size(),
                                                  b.tokens.size());
  s.char_edit = detail::similarity_from_distance(detail::levenshtein(a.chars, b.chars), a.chars.size(),
                                                 b.chars.size());
  s.lcs = static_cast<double>(detail::lcs_length(a.chars, b.chars)) /
          static_cast<double>(std::max(a.chars.size(), b.chars.size()));
  s.mean = (s.token_jaccard + s.char3_jaccard + s.token_edit + s.char_edit + s.lcs) / 5.0;
  return s;
}

inline AlignmentScore align(std::string_view a, std::string_view b) {
  return align(analyze_phrase(a), analyze_phrase(b));
}

struct PruneOptions {
  double threshold = 0.1;  // keep strictly above
  std::size_t cap = 200;
};

struct ScoredAlias {
  std::string alias;
  double score = 0;
};

// Average alignment of every candidate against all the others, for
// candidates that have at least one token. Input order is preserved.
inline std::vector<ScoredAlias> score_aliases(std::span<const std::string> candidates) {
  std::vector<ScoredAlias> scored;
  std::vector<PhraseFeatures> features;
  for (const std::string& c : candidates) {
    try {
      features.push_back(analyze_phrase(c));
      scored.push_back({c, 0.0});
    } catch (const EmptyPhrase&) {
    }
  }
  const std::size_t n = scored.size();
  if (n < 2) return scored;

  std::vector<double> means(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      means[i * n + j] = means[j * n + i] = align(features[i], features[j]).mean;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum += means[i * n + j];
    }
    scored[i].score = sum / static_cast<double>(n - 1);
  }
  return scored;
}

// Drops aliases that do not align with the rest of their candidate set:
// keep average alignment > threshold, then the `cap` best (ties by string).
// A single candidate is always kept. Result is ordered best first.
inline std::vector<std::string> prune_aliases(std::span<const std::string> candidates, const PruneOptions& options = {}) {
  std::vector<ScoredAlias> scored = score_aliases(candidates);
  if (scored.size() == 1) return {scored.front().alias};
  std::erase_if(scored, [&](const ScoredAlias& s) { return !(s.score > options.threshold); });
  std::sort(scored.begin(), scored.end(), [](const ScoredAlias& a, const ScoredAlias& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.alias < b.alias;
  });
  if (scored.size() > options.cap) scored.resize(options.cap);
  std::vector<std::string> out;
  out.reserve(scored.size());
  for (ScoredAlias& s : scored) out.push_back(std::move(s.alias));
  return out;
}

}  // namespace wikidense
