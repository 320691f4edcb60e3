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
#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wikidense/alignment.hpp"
#include "wikidense/corpus_model.hpp"
#include "wikidense/tsv.hpp"

namespace wikidense {

enum class AliasSource : std::uint8_t { kTitle, kAnchor, kRedirect, kKbAlias, kKbAka, kConcept };

inline constexpr std::array<std::string_view, 6> kAliasSourceNames = {"TITLE",    "ANCHOR", "REDIRECT",
                                                                      "KB_ALIAS", "KB_AKA", "CONCEPT"};

inline std::optional<AliasSource> parse_alias_source(std::string_view name) {
  for (std::size_t i = 0; i < kAliasSourceNames.size(); ++i) {
    if (kAliasSourceNames[i] == name) return static_cast<AliasSource>(i);
  }
  return std::nullopt;
}

struct AliasRecord {
  EntityId entity;
  std::string alias;
  std::string language;
  std::uint64_t frequency = 1;
  AliasSource source = AliasSource::kAnchor;
};

struct AliasCount {
  std::string alias;
  std::uint64_t frequency = 0;

  friend bool operator==(const AliasCount&, const AliasCount&) = default;
};

struct Candidate {
  EntityId entity;
  std::uint64_t frequency = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Lookup key of an alias: tokenized the same way as page text, case-folded,
// single-space joined. Empty when the alias has no tokens.
inline std::string alias_key(std::string_view alias) {
  std::string key;
  for (const Token& t : tokenize(alias)) {
    if (!key.empty()) key.push_back(' ');
    key.append(text::fold(t.raw_form));
  }
  return key;
}

namespace detail {

struct MergedAlias {
  std::map<std::string, std::uint64_t> variants;   // original spelling -> frequency
  std::map<std::string, std::uint64_t> languages;  // language -> frequency
  std::uint64_t total = 0;

  std::string display() const {
    auto best = variants.begin();
    for (auto it = variants.begin(); it != variants.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    return best->first;
  }
};

using MergedByEntity = std::map<EntityId, std::map<std::string, MergedAlias>>;

inline MergedByEntity merge_records(std::span<const AliasRecord> records) {
  MergedByEntity merged;
  for (const AliasRecord& r : records) {
    if (!r.entity.is_kb() || r.frequency == 0) continue;
    std::string key = alias_key(r.alias);
    if (key.empty()) continue;
    MergedAlias& m = merged[r.entity][std::move(key)];
    m.variants[r.alias] += r.frequency;
    m.languages[r.language] += r.frequency;
    m.total += r.frequency;
  }
  return merged;
}

inline void sort_alias_counts(std::vector<AliasCount>& list) {
  std::sort(list.begin(), list.end(), [](const AliasCount& a, const AliasCount& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.alias < b.alias;
  });
}

inline void sort_candidates(std::vector<Candidate>& list) {
  std::sort(list.begin(), list.end(), [](const Candidate& a, const Candidate& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.entity < b.entity;
  });
}

}  // namespace detail

using EntityAliases = std::map<EntityId, std::vector<AliasCount>>;

// Sums frequencies per (entity, case-folded alias) across sources and
// languages. The display spelling is the most frequent original variant.
inline EntityAliases merge_sources(std::span<const AliasRecord> records) {
  EntityAliases out;
  for (const auto& [entity, aliases] : detail::merge_records(records)) {
    std::vector<AliasCount>& list = out[entity];
    for (const auto& [key, merged] : aliases) list.push_back({merged.display(), merged.total});
    detail::sort_alias_counts(list);
  }
  return out;
}

// Longest-match index over alias keys: a token trie per language.
class PhraseMatcher {
 public:
  static constexpr std::uint32_t kUnknownToken = static_cast<std::uint32_t>(-1);

  struct Match {
    std::size_t length = 0;
    const std::vector<Candidate>* candidates = nullptr;
  };

  void add(const std::string& language, std::string_view key, const std::vector<Candidate>* candidates) {
    auto [root_it, inserted] = roots_.try_emplace(language, 0);
    if (inserted) root_it->second = new_node();
    std::uint32_t node = root_it->second;
    for (std::string_view token : text::split(key, ' ')) {
      const auto [vocab_it, fresh] = vocabulary_.try_emplace(std::string(token), 0);
      if (fresh) vocab_it->second = static_cast<std::uint32_t>(vocabulary_.size() - 1);
      const auto [edge_it, created] = edges_.try_emplace(edge_key(node, vocab_it->second), 0);
      if (created) edge_it->second = new_node();
      node = edge_it->second;
    }
    payload_[node] = candidates;
  }

  // Folded page tokens -> vocabulary ids (kUnknownToken when absent).
  std::vector<std::uint32_t> encode(std::span<const Token> tokens) const {
    std::vector<std::uint32_t> ids;
    ids.reserve(tokens.size());
    for (const Token& t : tokens) {
      const auto it = vocabulary_.find(text::fold(t.raw_form));
      ids.push_back(it == vocabulary_.end() ? kUnknownToken : it->second);
    }
    return ids;
  }

  std::optional<std::uint32_t> root(const std::string& language) const {
    const auto it = roots_.find(language);
    if (it == roots_.end()) return std::nullopt;
    return it->second;
  }

  // Longest key that starts at `ids[0]` and spans at most `max_len` ids.
  Match longest(std::uint32_t root, std::span<const std::uint32_t> ids, std::size_t max_len) const {
    Match best;
    std::uint32_t node = root;
    const std::size_t limit = std::min(max_len, ids.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (ids[i] == kUnknownToken) break;
      const auto it = edges_.find(edge_key(node, ids[i]));
      if (it == edges_.end()) break;
      node = it->second;
      if (payload_[node] != nullptr && !payload_[node]->empty()) best = {i + 1, payload_[node]};
    }
    return best;
  }

 private:
  static std::uint64_t edge_key(std::uint32_t node, std::uint32_t token) {
    return (static_cast<std::uint64_t>(node) << 32) | token;
  }

  std::uint32_t new_node() {
    payload_.push_back(nullptr);
    return static_cast<std::uint32_t>(payload_.size() - 1);
  }

  std::map<std::string, std::uint32_t> roots_;
  std::unordered_map<std::string, std::uint32_t> vocabulary_;
  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
  std::vector<const std::vector<Candidate>*> payload_;
};

struct DictionaryOptions {
  PruneOptions prune;
  std::size_t top_entities = 5;
};

// entity -> pruned aliases, and (language, alias key) -> top candidate
// entities. Immutable once built.
class CandidateDictionary {
 public:
  using AliasKey = std::pair<std::string, std::string>;  // language, alias key

  CandidateDictionary() = default;
  CandidateDictionary(EntityAliases entity_to_aliases, std::map<AliasKey, std::vector<Candidate>> alias_to_entities)
      : entity_to_aliases_(std::move(entity_to_aliases)), alias_to_entities_(std::move(alias_to_entities)) {
    for (const auto& [key, candidates] : alias_to_entities_) matcher_.add(key.first, key.second, &candidates);
  }
  CandidateDictionary(const CandidateDictionary&) = delete;
  CandidateDictionary& operator=(const CandidateDictionary&) = delete;
  CandidateDictionary(CandidateDictionary&&) = default;
  CandidateDictionary& operator=(CandidateDictionary&&) = default;

  const EntityAliases& entity_to_aliases() const { return entity_to_aliases_; }
  const std::map<AliasKey, std::vector<Candidate>>& alias_to_entities() const { return alias_to_entities_; }
  const PhraseMatcher& matcher() const { return matcher_; }

  // Candidates for a surface phrase (normalized internally); empty when unknown.
  std::span<const Candidate> candidates(std::string_view language, std::string_view phrase) const {
    const auto it = alias_to_entities_.find(AliasKey(language, alias_key(phrase)));
    if (it == alias_to_entities_.end()) return {};
    return it->second;
  }

  // E \t entity \t alias \t frequency   then   A \t lang \t key \t entity \t frequency
  void write_tsv(std::ostream& out) const {
    for (const auto& [entity, aliases] : entity_to_aliases_) {
      for (const AliasCount& a : aliases) out << "E\t" << entity.str() << '\t' << a.alias << '\t' << a.frequency << '\n';
    }
    for (const auto& [key, candidates] : alias_to_entities_) {
      for (const Candidate& c : candidates) {
        out << "A\t" << key.first << '\t' << key.second << '\t' << c.entity.str() << '\t' << c.frequency << '\n';
      }
    }
  }

  static CandidateDictionary read_tsv(std::istream& in, std::string_view source = "<dictionary>") {
    EntityAliases entities;
    std::map<AliasKey, std::vector<Candidate>> aliases;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto f = text::split(line, '\t');
      const auto fail = [&](const std::string& why) {
        throw InputError(std::string(source) + ":" + std::to_string(line_number) + ": " + why);
      };
      try {
        if (f[0] == "E" && f.size() == 4) {
          entities[EntityId::kb(f[1])].push_back({std::string(f[2]), tsv::parse_uint(f[3], source, line_number)});
        } else if (f[0] == "A" && f.size() == 5) {
          if (f[1].empty() || f[2].empty()) fail("empty language or alias");
          aliases[{std::string(f[1]), std::string(f[2])}].push_back(
              {EntityId::kb(f[3]), tsv::parse_uint(f[4], source, line_number)});
        } else {
          fail("unrecognized dictionary row");
        }
      } catch (const InvalidEntityId& e) {
        fail(e.what());
      }
    }
    return CandidateDictionary(std::move(entities), std::move(aliases));
  }

 private:
  EntityAliases entity_to_aliases_;
  std::map<AliasKey, std::vector<Candidate>> alias_to_entities_;
  PhraseMatcher matcher_;
};

// Merges alias records, prunes each entity's aliases by alignment, then
// inverts per language keeping the top entities by frequency.
inline CandidateDictionary build_dictionary(std::span<const AliasRecord> records, const DictionaryOptions& options = {}) {
  EntityAliases entity_to_aliases;
  std::map<CandidateDictionary::AliasKey, std::vector<Candidate>> alias_to_entities;

  for (const auto& [entity, aliases] : detail::merge_records(records)) {
    std::vector<std::string> displays;
    std::map<std::string, const std::pair<const std::string, detail::MergedAlias>*> by_display;
    for (const auto& entry : aliases) {
      displays.push_back(entry.second.display());
      by_display.emplace(displays.back(), &entry);
    }
    std::vector<AliasCount>& kept = entity_to_aliases[entity];
    for (const std::string& display : prune_aliases(displays, options.prune)) {
      const auto& [key, merged] = *by_display.at(display);
      kept.push_back({display, merged.total});
      for (const auto& [language, frequency] : merged.languages) {
        alias_to_entities[{language, key}].push_back({entity, frequency});
      }
    }
    detail::sort_alias_counts(kept);
  }
  for (auto& [key, candidates] : alias_to_entities) {
    detail::sort_candidates(candidates);
    if (candidates.size() > options.top_entities) candidates.resize(options.top_entities);
  }
  std::erase_if(entity_to_aliases, [](const auto& entry) { return entry.second.empty(); });
  return CandidateDictionary(std::move(entity_to_aliases), std::move(alias_to_entities));
}

// TSV: source \t lang \t entity_id \t alias \t frequency
inline std::vector<AliasRecord> read_alias_records(std::istream& in, std::string_view source = "<aliases>") {
  std::vector<AliasRecord> records;
  tsv::for_each_row(in, 5, source, [&](const auto& f, std::size_t line) {
    const auto where = std::string(source) + ":" + std::to_string(line) + ": ";
    const auto kind = parse_alias_source(f[0]);
    if (!kind) throw InputError(where + "unknown alias source '" + std::string(f[0]) + "'");
    tsv::require_nonempty(f[1], "language", source, line);
    tsv::require_nonempty(f[3], "alias", source, line);
    const std::uint64_t frequency = tsv::parse_uint(f[4], source, line);
    if (frequency == 0) throw InputError(where + "frequency must be at least 1");
    try {
      records.push_back({EntityId::kb(f[2]), std::string(f[3]), std::string(f[1]), frequency, *kind});
    } catch (const InvalidEntityId& e) {
      throw InputError(where + e.what());
    }
  });
  return records;
}

}  // namespace wikidense
