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

// Link densification: direct links from the markup, expected entities via
// co-occurrence, longest-shingle dictionary matching over unlabeled tokens,
// and candidate resolution (on-page entity first, then co-occurrence).

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wikidense/base.hpp"
#include "wikidense/cooccurrence.hpp"
#include "wikidense/corpus_model.hpp"
#include "wikidense/dictionary.hpp"
#include "wikidense/id_space.hpp"
#include "wikidense/parallel.hpp"
#include "wikidense/tsv.hpp"

namespace wikidense {

enum class EntityType : std::uint8_t { kPerson, kLocation, kOrganization, kOther };
enum class Provenance : std::uint8_t { kDirect, kDensified };

inline constexpr std::array<std::string_view, 4> kEntityTypeNames = {"PERSON", "LOCATION", "ORGANIZATION", "OTHER"};

inline std::string_view to_string(EntityType type) { return kEntityTypeNames[static_cast<std::size_t>(type)]; }

inline std::optional<EntityType> parse_entity_type(std::string_view name) {
  for (std::size_t i = 0; i < kEntityTypeNames.size(); ++i) {
    if (kEntityTypeNames[i] == name) return static_cast<EntityType>(i);
  }
  return std::nullopt;
}

inline std::string_view to_string(Provenance p) { return p == Provenance::kDirect ? "DIRECT" : "DENSIFIED"; }

struct Mention {
  EntityId entity;
  EntityType type = EntityType::kOther;
  std::size_t start_position = 0;  // inclusive
  std::size_t end_position = 0;    // inclusive
  std::string raw_form;
  Provenance provenance = Provenance::kDirect;

  friend bool operator==(const Mention&, const Mention&) = default;
};

struct AnnotatedDocument {
  std::string id;
  std::vector<Token> tokens;
  std::vector<Mention> entities;  // sorted by start_position

  friend bool operator==(const AnnotatedDocument&, const AnnotatedDocument&) = default;
};

// wiki_page_id:<lang>:<page_id>:<entity_id>:<title with '_' for ' '>
struct DocumentId {
  static constexpr std::string_view kPrefix = "wiki_page_id";

  std::string language;
  std::uint64_t page_id = 0;
  std::string entity;
  std::string title;

  std::string str() const {
    std::string t = title;
    std::replace(t.begin(), t.end(), ' ', '_');
    return std::string(kPrefix) + ":" + language + ":" + std::to_string(page_id) + ":" + entity + ":" + t;
  }

  // Title may itself contain ':'; everything after the fourth ':' is title.
  static std::optional<DocumentId> parse(std::string_view id) {
    std::array<std::string_view, 4> head;
    for (std::string_view& part : head) {
      const std::size_t colon = id.find(':');
      if (colon == std::string_view::npos) return std::nullopt;
      part = id.substr(0, colon);
      id.remove_prefix(colon + 1);
    }
    if (head[0] != kPrefix || head[1].empty() || head[2].empty() || head[3].empty() || id.empty()) return std::nullopt;
    DocumentId out;
    for (char c : head[2]) {
      if (c < '0' || c > '9') return std::nullopt;
      out.page_id = out.page_id * 10 + static_cast<std::uint64_t>(c - '0');
    }
    out.language = std::string(head[1]);
    out.entity = std::string(head[3]);
    out.title = std::string(id);
    std::replace(out.title.begin(), out.title.end(), '_', ' ');
    return out;
  }
};

// KB entity types; unknown entities are OTHER.
class EntityTypes {
 public:
  void set(const EntityId& entity, EntityType type) { types_[entity] = type; }

  EntityType type_of(const EntityId& entity) const {
    const auto it = types_.find(entity);
    return it == types_.end() ? EntityType::kOther : it->second;
  }

  std::size_t size() const { return types_.size(); }

  // TSV: entity_id \t type
  static EntityTypes read_tsv(std::istream& in, std::string_view source = "<types>") {
    EntityTypes types;
    tsv::for_each_row(in, 2, source, [&](const auto& f, std::size_t line) {
      const auto where = std::string(source) + ":" + std::to_string(line) + ": ";
      const auto type = parse_entity_type(f[1]);
      if (!type) throw InputError(where + "unknown entity type '" + std::string(f[1]) + "'");
      try {
        types.set(EntityId::kb(f[0]), *type);
      } catch (const InvalidEntityId& e) {
        throw InputError(where + e.what());
      }
    });
    return types;
  }

 private:
  std::unordered_map<EntityId, EntityType> types_;
};

struct DirectLinks {
  std::set<EntityId> entities;    // KB entities only
  std::vector<Mention> mentions;  // unresolvable anchors appear as MISC
};

inline DirectLinks direct_links(const WikiPage& page, const ArticleEntityMap& article_map, const EntityTypes& types) {
  DirectLinks out;
  for (const Anchor& a : page.anchors) {
    Mention m;
    m.start_position = a.start_token;
    m.end_position = a.end_token;
    m.raw_form = a.surface;
    m.provenance = Provenance::kDirect;
    if (auto entity = article_map.resolve(page.language, a.target_title)) {
      m.entity = std::move(*entity);
      m.type = types.type_of(m.entity);
      out.entities.insert(m.entity);
    } else {
      m.entity = EntityId::misc();
      m.type = EntityType::kOther;
    }
    out.mentions.push_back(std::move(m));
  }
  std::sort(out.mentions.begin(), out.mentions.end(),
            [](const Mention& x, const Mention& y) { return x.start_position < y.start_position; });
  return out;
}

inline std::set<EntityId> expected_entities(const std::set<EntityId>& direct, const CooccurrenceTable& table) {
  std::set<EntityId> out = direct;
  for (const EntityId& d : direct) {
    for (const Neighbor& n : table.neighbors(d)) out.insert(n.entity);
  }
  return out;
}

struct DensifyOptions {
  std::size_t max_shingle = 6;
};

class Densifier {
 public:
  Densifier(const CandidateDictionary& dictionary, const CooccurrenceTable& table, const ArticleEntityMap& article_map,
            const EntityTypes& types, DensifyOptions options = {})
      : dictionary_(dictionary), table_(table), article_map_(article_map), types_(types), options_(options) {}

  AnnotatedDocument annotate(const WikiPage& page) const {
    const std::optional<EntityId> subject = article_map_.resolve(page.language, page.title);
    DocumentId id{page.language, page.page_id, subject ? subject->str() : EntityId::misc().str(), page.title};
    if (id.title.empty()) id.title = std::to_string(page.page_id);

    AnnotatedDocument doc;
    doc.id = id.str();
    doc.tokens = page.tokens;
    DirectLinks direct = direct_links(page, article_map_, types_);
    if (subject) direct.entities.insert(*subject);
    doc.entities = densify(page.language, doc.tokens, std::move(direct));
    return doc;
  }

  // Recomputes the densified layer of an annotated document from its DIRECT
  // mentions and the subject entity named in its id.
  AnnotatedDocument reannotate(const AnnotatedDocument& doc) const {
    const std::optional<DocumentId> id = DocumentId::parse(doc.id);
    if (!id) throw InputError("malformed document id '" + doc.id + "'");
    DirectLinks direct;
    for (const Mention& m : doc.entities) {
      if (m.provenance != Provenance::kDirect) continue;
      direct.mentions.push_back(m);
      if (m.entity.is_kb()) direct.entities.insert(m.entity);
    }
    if (EntityId::is_kb_alphabet(id->entity)) direct.entities.insert(EntityId::kb(id->entity));
    AnnotatedDocument out;
    out.id = doc.id;
    out.tokens = doc.tokens;
    out.entities = densify(id->language, out.tokens, std::move(direct));
    return out;
  }

 private:
  std::vector<Mention> densify(const std::string& language, std::span<const Token> tokens, DirectLinks direct) const {
    std::vector<Mention> mentions = std::move(direct.mentions);
    const std::size_t n = tokens.size();
    std::vector<bool> labeled(n, false);
    for (const Mention& m : mentions) {
      for (std::size_t i = m.start_position; i <= m.end_position && i < n; ++i) labeled[i] = true;
    }

    const PhraseMatcher& matcher = dictionary_.matcher();
    const std::optional<std::uint32_t> root = matcher.root(language);
    if (!root || n == 0) return mentions;
    const std::vector<std::uint32_t> ids = matcher.encode(tokens);

    // Co-occurrence score of every expected entity against the direct set.
    std::unordered_map<EntityId, std::uint64_t> cooccurrence;
    for (const EntityId& d : direct.entities) {
      for (const Neighbor& nb : table_.neighbors(d)) cooccurrence[nb.entity] += nb.count;
    }

    const std::size_t direct_count = mentions.size();
    std::size_t pos = 0;
    while (pos < n) {
      if (labeled[pos]) {
        ++pos;
        continue;
      }
      std::size_t run = 0;
      while (pos + run < n && !labeled[pos + run] && run < options_.max_shingle) ++run;
      const PhraseMatcher::Match match =
          matcher.longest(*root, std::span(ids).subspan(pos, run), options_.max_shingle);
      if (match.length == 0) {
        ++pos;
        continue;
      }
      const EntityId* chosen = resolve(*match.candidates, direct.entities, cooccurrence);
      if (chosen == nullptr) {
        ++pos;
        continue;
      }
      Mention m;
      m.entity = *chosen;
      m.type = types_.type_of(*chosen);
      m.start_position = pos;
      m.end_position = pos + match.length - 1;
      m.raw_form = join_tokens(tokens.subspan(pos, match.length));
      m.provenance = Provenance::kDensified;
      mentions.push_back(std::move(m));
      pos += match.length;
    }
    std::inplace_merge(mentions.begin(), mentions.begin() + static_cast<std::ptrdiff_t>(direct_count), mentions.end(),
                       [](const Mention& x, const Mention& y) { return x.start_position < y.start_position; });
    return mentions;
  }

  // Candidates arrive sorted by frequency desc, id asc, which is the
  // tie-break order inside each rule.
  static const EntityId* resolve(const std::vector<Candidate>& candidates, const std::set<EntityId>& direct,
                                 const std::unordered_map<EntityId, std::uint64_t>& cooccurrence) {
    for (const Candidate& c : candidates) {
      if (direct.contains(c.entity)) return &c.entity;
    }
    const EntityId* best = nullptr;
    std::uint64_t best_score = 0;
    for (const Candidate& c : candidates) {
      const auto it = cooccurrence.find(c.entity);
      if (it != cooccurrence.end() && it->second > best_score) {
        best = &c.entity;
        best_score = it->second;
      }
    }
    return best;
  }

  const CandidateDictionary& dictionary_;
  const CooccurrenceTable& table_;
  const ArticleEntityMap& article_map_;
  const EntityTypes& types_;
  DensifyOptions options_;
};

// (DIRECT + DENSIFIED) / DIRECT.
inline Ratio density_ratio(const AnnotatedDocument& doc) {
  std::uint64_t direct = 0;
  for (const Mention& m : doc.entities) direct += m.provenance == Provenance::kDirect ? 1 : 0;
  if (direct == 0) throw NoDirectLinks("document '" + doc.id + "' has no direct links");
  return Ratio{doc.entities.size(), direct};
}

// Annotates non-redirect pages in parallel; output follows input order.
inline std::vector<AnnotatedDocument> annotate_corpus(std::span<const WikiPage> pages, const Densifier& densifier,
                                                      unsigned workers = 0) {
  std::vector<const WikiPage*> articles;
  for (const WikiPage& p : pages) {
    if (!p.is_redirect()) articles.push_back(&p);
  }
  return parallel_map(articles.size(), workers, [&](std::size_t i) { return densifier.annotate(*articles[i]); });
}

}  // namespace wikidense
