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
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "wikidense/corpus_model.hpp"
#include "wikidense/id_space.hpp"
#include "wikidense/parallel.hpp"
#include "wikidense/tsv.hpp"

namespace wikidense {

struct CooccurrenceOptions {
  std::size_t window = 10;          // max tokens strictly between two anchors
  std::uint64_t min_count = 3;
  std::size_t max_neighbors = 50;
  bool page_level = false;          // count a pair at most once per page
};

// Unordered entity pair counts, stored with the smaller id first.
class PairCounts {
 public:
  using Pair = std::pair<EntityId, EntityId>;

  void add(const EntityId& a, const EntityId& b, std::uint64_t n = 1) {
    if (a == b) return;
    counts_[ordered(a, b)] += n;
  }

  void merge(const PairCounts& other) {
    for (const auto& [pair, n] : other.counts_) counts_[pair] += n;
  }

  std::uint64_t count(const EntityId& a, const EntityId& b) const {
    if (a == b) return 0;
    const auto it = counts_.find(ordered(a, b));
    return it == counts_.end() ? 0 : it->second;
  }

  const std::map<Pair, std::uint64_t>& pairs() const { return counts_; }
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  friend bool operator==(const PairCounts&, const PairCounts&) = default;

 private:
  static Pair ordered(const EntityId& a, const EntityId& b) { return a < b ? Pair(a, b) : Pair(b, a); }

  std::map<Pair, std::uint64_t> counts_;
};

struct ResolvedAnchor {
  EntityId entity;
  std::size_t start = 0;
  std::size_t end = 0;
};

inline std::vector<ResolvedAnchor> resolve_anchors(const WikiPage& page, const ArticleEntityMap& article_map) {
  std::vector<ResolvedAnchor> out;
  for (const Anchor& a : page.anchors) {
    if (auto entity = article_map.resolve(page.language, a.target_title)) {
      out.push_back({std::move(*entity), a.start_token, a.end_token});
    }
  }
  std::sort(out.begin(), out.end(), [](const ResolvedAnchor& x, const ResolvedAnchor& y) { return x.start < y.start; });
  return out;
}

// Pairs of resolved anchors on one page whose spans have at most `window`
// tokens between them.
inline PairCounts extract_page(const WikiPage& page, const ArticleEntityMap& article_map,
                               const CooccurrenceOptions& options = {}) {
  const std::vector<ResolvedAnchor> anchors = resolve_anchors(page, article_map);
  PairCounts counts;
  std::set<PairCounts::Pair> seen;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      if (anchors[j].start <= anchors[i].end) continue;  // overlapping input; not produced by parse_page
      if (anchors[j].start - anchors[i].end - 1 > options.window) break;
      const EntityId& a = anchors[i].entity;
      const EntityId& b = anchors[j].entity;
      if (a == b) continue;
      if (options.page_level && !seen.insert(a < b ? std::pair(a, b) : std::pair(b, a)).second) continue;
      counts.add(a, b);
    }
  }
  return counts;
}

inline PairCounts extract(std::span<const WikiPage> pages, const ArticleEntityMap& article_map,
                          const CooccurrenceOptions& options = {}, unsigned workers = 1) {
  workers = resolve_workers(workers);
  const std::size_t chunks = std::min<std::size_t>(pages.size(), workers);
  const auto partial = parallel_map(chunks, workers, [&](std::size_t c) {
    PairCounts counts;
    for (std::size_t i = c; i < pages.size(); i += chunks) counts.merge(extract_page(pages[i], article_map, options));
    return counts;
  });
  PairCounts total;
  for (const PairCounts& p : partial) total.merge(p);
  return total;
}

struct Neighbor {
  EntityId entity;
  std::uint64_t count = 0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Per-entity neighbor lists, count descending then id ascending. Pruning is
// per entity, so a may list b while b drops a.
class CooccurrenceTable {
 public:
  CooccurrenceTable() = default;
  explicit CooccurrenceTable(std::map<EntityId, std::vector<Neighbor>> neighbors)
      : neighbors_(std::move(neighbors)) {}

  std::span<const Neighbor> neighbors(const EntityId& entity) const {
    const auto it = neighbors_.find(entity);
    if (it == neighbors_.end()) return {};
    return it->second;
  }

  // Count of `other` in `entity`'s list; 0 when pruned away.
  std::uint64_t count(const EntityId& entity, const EntityId& other) const {
    for (const Neighbor& n : neighbors(entity)) {
      if (n.entity == other) return n.count;
    }
    return 0;
  }

  const std::map<EntityId, std::vector<Neighbor>>& lists() const { return neighbors_; }
  bool empty() const { return neighbors_.empty(); }

  // entity_a \t entity_b \t count, in list order.
  void write_tsv(std::ostream& out) const {
    for (const auto& [entity, list] : neighbors_) {
      for (const Neighbor& n : list) out << entity.str() << '\t' << n.entity.str() << '\t' << n.count << '\n';
    }
  }

  static CooccurrenceTable read_tsv(std::istream& in, std::string_view source = "<cooccurrence>") {
    std::map<EntityId, std::vector<Neighbor>> lists;
    tsv::for_each_row(in, 3, source, [&](const auto& f, std::size_t line) {
      try {
        lists[EntityId::kb(f[0])].push_back({EntityId::kb(f[1]), tsv::parse_uint(f[2], source, line)});
      } catch (const InvalidEntityId& e) {
        throw InputError(std::string(source) + ":" + std::to_string(line) + ": " + e.what());
      }
    });
    return CooccurrenceTable(std::move(lists));
  }

  friend bool operator==(const CooccurrenceTable&, const CooccurrenceTable&) = default;

 private:
  std::map<EntityId, std::vector<Neighbor>> neighbors_;
};

inline CooccurrenceTable prune(const PairCounts& counts, const CooccurrenceOptions& options = {}) {
  std::map<EntityId, std::vector<Neighbor>> lists;
  for (const auto& [pair, n] : counts.pairs()) {
    if (n < options.min_count) continue;
    lists[pair.first].push_back({pair.second, n});
    lists[pair.second].push_back({pair.first, n});
  }
  for (auto& [entity, list] : lists) {
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) {
      if (a.count != b.count) return a.count > b.count;
      return a.entity < b.entity;
    });
    if (list.size() > options.max_neighbors) list.resize(options.max_neighbors);
  }
  return CooccurrenceTable(std::move(lists));
}

}  // namespace wikidense
