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
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wikidense/corpus_model.hpp"
#include "wikidense/tsv.hpp"

namespace wikidense {

// Redirect edges of one language, from title to target title.
struct RedirectGraph {
  std::map<std::string, std::string> edges;
};

using CanonicalMap = std::map<std::string, std::string>;
using CanonicalMaps = std::map<std::string, CanonicalMap>;  // by language

// Maps every title in the graph to its representative: the sink its chain
// ends in, or the lexicographically smallest member of the cycle it runs
// into. Self-edges are ignored.
inline CanonicalMap canonicalize(const RedirectGraph& graph) {
  std::vector<std::string> names;
  for (const auto& [from, to] : graph.edges) {
    names.push_back(from);
    names.push_back(to);
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  const auto index_of = [&](const std::string& name) {
    return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), name) - names.begin());
  };

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> next(names.size(), kNone);
  for (const auto& [from, to] : graph.edges) {
    if (from != to) next[index_of(from)] = index_of(to);
  }

  // Functional graph walk: 0 = unvisited, 1 = on current path, 2 = resolved.
  std::vector<std::uint8_t> state(names.size(), 0);
  std::vector<std::size_t> rep(names.size(), kNone);
  std::vector<std::size_t> path;
  for (std::size_t start = 0; start < names.size(); ++start) {
    if (state[start] == 2) continue;
    path.clear();
    std::size_t node = start;
    while (node != kNone && state[node] == 0) {
      state[node] = 1;
      path.push_back(node);
      node = next[node];
    }
    std::size_t representative;
    if (node == kNone) {
      representative = path.back();
    } else if (state[node] == 2) {
      representative = rep[node];
    } else {
      // Closed a cycle: members are path[pos(node)..]; indices sort like names.
      const auto cycle_begin = std::find(path.begin(), path.end(), node);
      representative = *std::min_element(cycle_begin, path.end());
    }
    for (std::size_t member : path) {
      rep[member] = representative;
      state[member] = 2;
    }
  }

  CanonicalMap out;
  for (std::size_t i = 0; i < names.size(); ++i) out.emplace(names[i], names[rep[i]]);
  return out;
}

struct KbLink {
  std::string language;
  std::string title;
  EntityId entity;
};

struct TitleConflict {
  std::string language;
  std::string title;
  EntityId kept;
  EntityId dropped;
};

// (language, canonical title) -> entity, plus the title canonicalization
// needed to resolve arbitrary link targets.
class ArticleEntityMap {
 public:
  using Key = std::pair<std::string, std::string>;

  ArticleEntityMap() = default;
  ArticleEntityMap(std::map<Key, EntityId> entries, CanonicalMaps canon, std::vector<TitleConflict> conflicts)
      : entries_(std::move(entries)), canon_(std::move(canon)), conflicts_(std::move(conflicts)) {}

  std::string canonical_title(std::string_view language, std::string_view title) const {
    std::string normalized = text::normalize_title(title);
    if (const auto lang = canon_.find(std::string(language)); lang != canon_.end()) {
      if (const auto it = lang->second.find(normalized); it != lang->second.end()) return it->second;
    }
    return normalized;
  }

  std::optional<EntityId> resolve(std::string_view language, std::string_view title) const {
    const auto it = entries_.find(Key(language, canonical_title(language, title)));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<Key, EntityId>& entries() const { return entries_; }
  const std::vector<TitleConflict>& conflicts() const { return conflicts_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<Key, EntityId> entries_;
  CanonicalMaps canon_;
  std::vector<TitleConflict> conflicts_;
};

// Joins KB links with the redirect closure. A canonical title claimed by
// several entities keeps the one with the most links, then the smallest id.
inline ArticleEntityMap build_article_entity_map(std::span<const KbLink> links, CanonicalMaps canon) {
  const auto canonical = [&](const std::string& language, const std::string& title) {
    std::string normalized = text::normalize_title(title);
    if (const auto lang = canon.find(language); lang != canon.end()) {
      if (const auto it = lang->second.find(normalized); it != lang->second.end()) return it->second;
    }
    return normalized;
  };

  std::map<ArticleEntityMap::Key, std::map<EntityId, std::size_t>> votes;
  for (const KbLink& link : links) {
    if (!link.entity.is_kb()) continue;
    std::string title = canonical(link.language, link.title);
    if (title.empty()) continue;
    ++votes[{link.language, std::move(title)}][link.entity];
  }

  std::map<ArticleEntityMap::Key, EntityId> entries;
  std::vector<TitleConflict> conflicts;
  for (const auto& [key, by_entity] : votes) {
    auto best = by_entity.begin();
    for (auto it = by_entity.begin(); it != by_entity.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    for (const auto& [entity, count] : by_entity) {
      if (entity != best->first) conflicts.push_back({key.first, key.second, best->first, entity});
    }
    entries.emplace(key, best->first);
  }
  return ArticleEntityMap(std::move(entries), std::move(canon), std::move(conflicts));
}

struct DifferentPair {
  std::string key;
  std::string a_value;
  std::string b_value;

  friend bool operator==(const DifferentPair&, const DifferentPair&) = default;
};

struct IdMappingDiff {
  std::size_t same = 0;
  std::size_t different = 0;
  std::size_t a_only = 0;
  std::size_t b_only = 0;
  std::vector<DifferentPair> different_pairs;  // sorted by key

  std::size_t total() const { return same + different + a_only + b_only; }
};

using IdMapping = std::map<std::string, std::string>;

inline IdMappingDiff diff_mappings(const IdMapping& a, const IdMapping& b) {
  IdMappingDiff diff;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      ++diff.a_only;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      ++diff.b_only;
      ++ib;
    } else {
      if (ia->second == ib->second) {
        ++diff.same;
      } else {
        ++diff.different;
        diff.different_pairs.push_back({ia->first, ia->second, ib->second});
      }
      ++ia;
      ++ib;
    }
  }
  return diff;
}

// TSV: lang \t from_title \t to_title
inline std::map<std::string, RedirectGraph> read_redirects(std::istream& in, std::string_view source = "<redirects>") {
  std::map<std::string, RedirectGraph> graphs;
  tsv::for_each_row(in, 3, source, [&](const auto& f, std::size_t line) {
    tsv::require_nonempty(f[0], "language", source, line);
    std::string from = text::normalize_title(f[1]);
    std::string to = text::normalize_title(f[2]);
    tsv::require_nonempty(from, "redirect source", source, line);
    tsv::require_nonempty(to, "redirect target", source, line);
    graphs[std::string(f[0])].edges.insert_or_assign(std::move(from), std::move(to));
  });
  return graphs;
}

inline CanonicalMaps canonicalize_all(const std::map<std::string, RedirectGraph>& graphs) {
  CanonicalMaps out;
  for (const auto& [language, graph] : graphs) out.emplace(language, canonicalize(graph));
  return out;
}

// TSV: lang \t title \t entity_id
inline std::vector<KbLink> read_kb_links(std::istream& in, std::string_view source = "<kb-links>") {
  std::vector<KbLink> links;
  tsv::for_each_row(in, 3, source, [&](const auto& f, std::size_t line) {
    tsv::require_nonempty(f[0], "language", source, line);
    tsv::require_nonempty(f[1], "title", source, line);
    try {
      links.push_back({std::string(f[0]), std::string(f[1]), EntityId::kb(f[2])});
    } catch (const InvalidEntityId& e) {
      throw InputError(std::string(source) + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return links;
}

// TSV: id_a \t id_b. Duplicate keys keep their first value.
inline IdMapping read_id_mapping(std::istream& in, std::string_view source = "<mapping>") {
  IdMapping mapping;
  tsv::for_each_row(in, 2, source, [&](const auto& f, std::size_t line) {
    tsv::require_nonempty(f[0], "key", source, line);
    tsv::require_nonempty(f[1], "value", source, line);
    mapping.emplace(std::string(f[0]), std::string(f[1]));
  });
  return mapping;
}

inline void write_canonical_maps(std::ostream& out, const CanonicalMaps& maps) {
  for (const auto& [language, canon] : maps) {
    for (const auto& [title, representative] : canon) {
      out << language << '\t' << title << '\t' << representative << '\n';
    }
  }
}

}  // namespace wikidense
