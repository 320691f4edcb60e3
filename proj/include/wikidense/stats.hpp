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

// Derived datasets over annotated documents: mention occurrence counts,
// entity occurrence counts with per-language surface forms, mention-entity
// co-occurrence counts and the prior count(m->e) / count(m).
//
// Surface forms are case-sensitive. MISC/NIL mentions are counted as
// mention occurrences but never as entities.

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "wikidense/base.hpp"
#include "wikidense/densifier.hpp"
#include "wikidense/tsv.hpp"

namespace wikidense {

enum class ShareFormat { kMachine, kDisplay };

namespace detail {

inline std::string format_share(std::uint64_t count, std::uint64_t total, ShareFormat format) {
  const double share = static_cast<double>(count) / static_cast<double>(total);
  if (format == ShareFormat::kMachine) return tsv::format_double(share);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", share * 100.0);
  return buf;
}

template <typename Key, typename Value, typename Rank>
std::vector<std::pair<Key, Value>> ranked(const std::map<Key, Value>& m, Rank&& group_of) {
  std::vector<std::pair<Key, Value>> rows(m.begin(), m.end());
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    const auto ga = group_of(a.first);
    const auto gb = group_of(b.first);
    if (ga != gb) return ga < gb;
    return a.second > b.second;
  });
  return rows;
}

}  // namespace detail

class MentionStats {
 public:
  using Key = std::pair<std::string, std::string>;  // language, surface

  void add(const std::string& language, const std::string& surface, std::uint64_t n = 1) { counts_[{language, surface}] += n; }
  void merge(const MentionStats& other) {
    for (const auto& [k, n] : other.counts_) counts_[k] += n;
  }

  std::uint64_t count(std::string_view language, std::string_view surface) const {
    const auto it = counts_.find(Key(language, surface));
    return it == counts_.end() ? 0 : it->second;
  }
  const std::map<Key, std::uint64_t>& counts() const { return counts_; }

  // lang \t mention \t count
  void write_tsv(std::ostream& out) const {
    for (const auto& [k, n] : counts_) out << k.first << '\t' << k.second << '\t' << n << '\n';
  }
  static MentionStats read_tsv(std::istream& in, std::string_view source = "<mention-counts>") {
    MentionStats stats;
    tsv::for_each_row(in, 3, source, [&](const auto& f, std::size_t line) {
      tsv::require_nonempty(f[1], "mention", source, line);
      stats.add(std::string(f[0]), std::string(f[1]), tsv::parse_uint(f[2], source, line));
    });
    return stats;
  }

  friend bool operator==(const MentionStats&, const MentionStats&) = default;

 private:
  std::map<Key, std::uint64_t> counts_;
};

class EntityStats {
 public:
  using SurfaceKey = std::tuple<EntityId, std::string, std::string>;  // entity, language, surface

  void add(const EntityId& entity, const std::string& language, const std::string& surface, std::uint64_t n = 1) {
    counts_[entity] += n;
    surfaces_[{entity, language, surface}] += n;
    language_totals_[{entity, language}] += n;
  }
  void merge(const EntityStats& other) {
    for (const auto& [k, n] : other.counts_) counts_[k] += n;
    for (const auto& [k, n] : other.surfaces_) surfaces_[k] += n;
    for (const auto& [k, n] : other.language_totals_) language_totals_[k] += n;
  }

  std::uint64_t count(const EntityId& entity) const {
    const auto it = counts_.find(entity);
    return it == counts_.end() ? 0 : it->second;
  }
  std::uint64_t surface_count(const EntityId& entity, const std::string& language, const std::string& surface) const {
    const auto it = surfaces_.find({entity, language, surface});
    return it == surfaces_.end() ? 0 : it->second;
  }
  // Share of `surface` among all surfaces of `entity` in `language`.
  Ratio surface_share(const EntityId& entity, const std::string& language, const std::string& surface) const {
    const auto total = language_totals_.find({entity, language});
    if (total == language_totals_.end()) return Ratio{0, 1};
    return Ratio{surface_count(entity, language, surface), total->second};
  }

  const std::map<EntityId, std::uint64_t>& counts() const { return counts_; }
  const std::map<SurfaceKey, std::uint64_t>& surfaces() const { return surfaces_; }

  // entity \t count
  void write_counts_tsv(std::ostream& out) const {
    for (const auto& [e, n] : counts_) out << e.str() << '\t' << n << '\n';
  }

  // entity \t lang \t surface \t count \t share ; most frequent first per (entity, lang)
  void write_surfaces_tsv(std::ostream& out, ShareFormat format) const {
    const auto rows = detail::ranked(surfaces_, [](const SurfaceKey& k) { return std::pair(std::get<0>(k), std::get<1>(k)); });
    for (const auto& [k, n] : rows) {
      const auto& [entity, language, surface] = k;
      out << entity.str() << '\t' << language << '\t' << surface << '\t' << n << '\t'
          << detail::format_share(n, language_totals_.at({entity, language}), format) << '\n';
    }
  }

  static EntityStats read_surfaces_tsv(std::istream& in, std::string_view source = "<entity-surfaces>") {
    EntityStats stats;
    tsv::for_each_row(in, 5, source, [&](const auto& f, std::size_t line) {
      try {
        stats.add(EntityId::kb(f[0]), std::string(f[1]), std::string(f[2]), tsv::parse_uint(f[3], source, line));
      } catch (const InvalidEntityId& e) {
        throw InputError(std::string(source) + ":" + std::to_string(line) + ": " + e.what());
      }
    });
    return stats;
  }

  friend bool operator==(const EntityStats&, const EntityStats&) = default;

 private:
  std::map<EntityId, std::uint64_t> counts_;
  std::map<SurfaceKey, std::uint64_t> surfaces_;
  std::map<std::pair<EntityId, std::string>, std::uint64_t> language_totals_;
};

class MentionEntityStats {
 public:
  using Key = std::tuple<std::string, std::string, EntityId>;  // language, surface, entity

  void add(const std::string& language, const std::string& surface, const EntityId& entity, std::uint64_t n = 1) {
    counts_[{language, surface, entity}] += n;
    totals_[{language, surface}] += n;
  }
  void merge(const MentionEntityStats& other) {
    for (const auto& [k, n] : other.counts_) counts_[k] += n;
    for (const auto& [k, n] : other.totals_) totals_[k] += n;
  }

  std::uint64_t count(const std::string& language, const std::string& surface, const EntityId& entity) const {
    const auto it = counts_.find({language, surface, entity});
    return it == counts_.end() ? 0 : it->second;
  }
  // Sum over all entities linked from this surface form.
  std::uint64_t linked_total(const std::string& language, const std::string& surface) const {
    const auto it = totals_.find({language, surface});
    return it == totals_.end() ? 0 : it->second;
  }
  Ratio share(const std::string& language, const std::string& surface, const EntityId& entity) const {
    const std::uint64_t total = linked_total(language, surface);
    if (total == 0) return Ratio{0, 1};
    return Ratio{count(language, surface, entity), total};
  }

  const std::map<Key, std::uint64_t>& counts() const { return counts_; }

  // lang \t mention \t entity \t count \t share ; most frequent first per mention
  void write_tsv(std::ostream& out, ShareFormat format) const {
    const auto rows = detail::ranked(counts_, [](const Key& k) { return std::pair(std::get<0>(k), std::get<1>(k)); });
    for (const auto& [k, n] : rows) {
      const auto& [language, surface, entity] = k;
      out << language << '\t' << surface << '\t' << entity.str() << '\t' << n << '\t'
          << detail::format_share(n, totals_.at({language, surface}), format) << '\n';
    }
  }

  static MentionEntityStats read_tsv(std::istream& in, std::string_view source = "<mention-entities>") {
    MentionEntityStats stats;
    tsv::for_each_row(in, 5, source, [&](const auto& f, std::size_t line) {
      try {
        stats.add(std::string(f[0]), std::string(f[1]), EntityId::kb(f[2]), tsv::parse_uint(f[3], source, line));
      } catch (const InvalidEntityId& e) {
        throw InputError(std::string(source) + ":" + std::to_string(line) + ": " + e.what());
      }
    });
    return stats;
  }

  friend bool operator==(const MentionEntityStats&, const MentionEntityStats&) = default;

 private:
  std::map<Key, std::uint64_t> counts_;
  std::map<std::pair<std::string, std::string>, std::uint64_t> totals_;
};

struct CorpusStats {
  MentionStats mentions;
  EntityStats entities;
  MentionEntityStats mention_entities;

  void add(const AnnotatedDocument& doc) {
    const auto id = DocumentId::parse(doc.id);
    const std::string language = id ? id->language : std::string();
    for (const Mention& m : doc.entities) {
      mentions.add(language, m.raw_form);
      if (!m.entity.is_kb()) continue;
      entities.add(m.entity, language, m.raw_form);
      mention_entities.add(language, m.raw_form, m.entity);
    }
  }

  void merge(const CorpusStats& other) {
    mentions.merge(other.mentions);
    entities.merge(other.entities);
    mention_entities.merge(other.mention_entities);
  }

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

inline CorpusStats aggregate(std::span<const AnnotatedDocument> docs) {
  CorpusStats stats;
  for (const AnnotatedDocument& doc : docs) stats.add(doc);
  return stats;
}

// Exact prior count(m->e) / count(m). Throws UnknownMention when m was never seen.
inline Ratio prior_ratio(const MentionStats& mentions, const MentionEntityStats& pairs, const std::string& language,
                         const std::string& mention, const EntityId& entity) {
  const std::uint64_t total = mentions.count(language, mention);
  if (total == 0) throw UnknownMention("unknown mention '" + mention + "' (" + language + ")");
  return Ratio{pairs.count(language, mention, entity), total};
}

inline double prior(const CorpusStats& stats, const std::string& language, const std::string& mention,
                    const EntityId& entity) {
  return prior_ratio(stats.mentions, stats.mention_entities, language, mention, entity).value();
}

// lang \t mention \t entity \t pair_count \t mention_count \t prior
inline void write_priors_tsv(std::ostream& out, const MentionStats& mentions, const MentionEntityStats& pairs) {
  for (const auto& [key, n] : pairs.counts()) {
    const auto& [language, surface, entity] = key;
    const std::uint64_t total = mentions.count(language, surface);
    if (total == 0) {
      throw InputError("mention '" + surface + "' (" + language + ") has entity links but no occurrence count");
    }
    out << language << '\t' << surface << '\t' << entity.str() << '\t' << n << '\t' << total << '\t'
        << tsv::format_double(Ratio{n, total}.value()) << '\n';
  }
}

}  // namespace wikidense
