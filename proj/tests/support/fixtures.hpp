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

// Hand-built fixtures and seeded random generators shared by the suites.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wikidense/wikidense.hpp"

namespace fixtures {

using namespace wikidense;

inline std::string data_path(const std::string& name) { return std::string(WIKIDENSE_TEST_DATA) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Drops whitespace outside JSON string literals.
inline std::string normalize_json(const std::string& json) {
  std::string out;
  bool in_string = false;
  bool escaped = false;
  for (char c : json) {
    if (in_string) {
      out.push_back(c);
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
    } else if (c == '"') {
      in_string = true;
      out.push_back(c);
    } else if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
      out.push_back(c);
    }
  }
  return out;
}

// The "Vlade Divac" page: "Serbian" is anchored, the title mention resolves
// through the page subject and "NBA" through co-occurrence with Serbia.
struct Listing1 {
  WikiPage page;
  ArticleEntityMap article_map;
  CandidateDictionary dictionary;
  CooccurrenceTable table;
  EntityTypes types;

  Listing1() {
    page = parse_page("Vlade Divac is a retired [[Serbia|Serbian]] NBA player.", "en", 322505, "Vlade Divac");
    const std::vector<KbLink> links = {{"en", "Vlade Divac", EntityId::kb("01vpr3")},
                                       {"en", "Serbia", EntityId::kb("077qn")},
                                       {"en", "National Basketball Association", EntityId::kb("05jvx")}};
    article_map = build_article_entity_map(links, {});
    const std::vector<AliasRecord> records = {
        {EntityId::kb("01vpr3"), "Vlade Divac", "en", 4, AliasSource::kTitle},
        {EntityId::kb("01vpr3"), "Divac", "en", 2, AliasSource::kAnchor},
        {EntityId::kb("077qn"), "Serbia", "en", 9, AliasSource::kTitle},
        {EntityId::kb("077qn"), "Serbian", "en", 3, AliasSource::kAnchor},
        {EntityId::kb("05jvx"), "NBA", "en", 7, AliasSource::kAnchor},
        {EntityId::kb("05jvx"), "N.B.A.", "en", 1, AliasSource::kKbAka},
    };
    dictionary = build_dictionary(records);
    table = CooccurrenceTable({{EntityId::kb("077qn"), {{EntityId::kb("05jvx"), 3}}},
                               {EntityId::kb("05jvx"), {{EntityId::kb("077qn"), 3}}}});
    types.set(EntityId::kb("01vpr3"), EntityType::kPerson);
    types.set(EntityId::kb("077qn"), EntityType::kLocation);
    types.set(EntityId::kb("05jvx"), EntityType::kOrganization);
  }

  AnnotatedDocument annotate() const { return Densifier(dictionary, table, article_map, types).annotate(page); }
};

// Random synthetic corpus: a vocabulary of words, entities with 1-3 token
// aliases (some shared between entities), pages mixing anchors, alias
// occurrences and filler.
struct SyntheticWorld {
  std::vector<std::string> filler;
  std::vector<EntityId> entities;
  std::vector<std::string> titles;
  std::vector<std::vector<std::string>> aliases;  // per entity
  ArticleEntityMap article_map;
  CandidateDictionary dictionary;
  CooccurrenceTable table;
  EntityTypes types;

  SyntheticWorld(std::mt19937_64& rng, std::size_t entity_count, std::size_t vocabulary) {
    for (std::size_t i = 0; i < vocabulary; ++i) filler.push_back("w" + std::to_string(i));
    std::vector<std::string> alias_words;
    for (std::size_t i = 0; i < vocabulary / 2 + 2; ++i) alias_words.push_back("Al" + std::to_string(i));
    std::uniform_int_distribution<std::size_t> word(0, alias_words.size() - 1);
    std::uniform_int_distribution<int> length(1, 3);
    std::vector<KbLink> links;
    std::vector<AliasRecord> records;
    for (std::size_t e = 0; e < entity_count; ++e) {
      entities.push_back(EntityId::kb("0e" + std::to_string(e)));
      titles.push_back("Title " + std::to_string(e));
      links.push_back({"en", titles.back(), entities.back()});
      types.set(entities.back(), static_cast<EntityType>(e % 4));
      std::vector<std::string> mine;
      // Aliases of one entity share a head word so they align with each other.
      const std::string head = alias_words[word(rng)];
      for (int k = 0; k < 3; ++k) {
        std::string alias = head;
        for (int t = 1; t < length(rng); ++t) alias += " " + alias_words[word(rng)];
        mine.push_back(alias);
        records.push_back({entities.back(), alias, "en", 1 + rng() % 20, AliasSource::kAnchor});
      }
      aliases.push_back(std::move(mine));
    }
    article_map = build_article_entity_map(links, {});
    dictionary = build_dictionary(records);
    std::map<EntityId, std::vector<Neighbor>> lists;
    for (std::size_t e = 0; e < entity_count; ++e) {
      for (int k = 0; k < 3; ++k) {
        const std::size_t other = rng() % entity_count;
        if (other == e) continue;
        lists[entities[e]].push_back({entities[other], 3 + rng() % 10});
      }
    }
    for (auto& [id, list] : lists) {
      std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.entity < b.entity; });
      list.erase(std::unique(list.begin(), list.end(),
                             [](const Neighbor& a, const Neighbor& b) { return a.entity == b.entity; }),
                 list.end());
      std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) {
        return a.count != b.count ? a.count > b.count : a.entity < b.entity;
      });
    }
    table = CooccurrenceTable(std::move(lists));
  }

  // Markup with `tokens` roughly this many words.
  std::string random_markup(std::mt19937_64& rng, std::size_t tokens) const {
    std::string out;
    std::size_t emitted = 0;
    while (emitted < tokens) {
      const auto roll = rng() % 10;
      const std::size_t e = rng() % entities.size();
      const std::string& alias = aliases[e][rng() % aliases[e].size()];
      if (roll == 0) {
        out += "[[" + titles[e] + "|" + alias + "]] ";
        emitted += 2;
      } else if (roll < 4) {
        out += alias + " ";
        emitted += 2;
      } else if (roll == 4) {
        out += "[[Unknown " + std::to_string(rng() % 5) + "]] ";
        emitted += 2;
      } else {
        out += filler[rng() % filler.size()] + (roll == 9 ? ". " : " ");
        emitted += 1;
      }
    }
    return out;
  }

  WikiPage random_page(std::mt19937_64& rng, std::uint64_t page_id, std::size_t tokens) const {
    const std::size_t subject = rng() % (entities.size() + 1);
    const std::string title = subject < entities.size() ? titles[subject] : "Orphan " + std::to_string(page_id);
    return parse_page(random_markup(rng, tokens), "en", page_id, title);
  }
};

// Annotated documents with random tokens and non-overlapping mentions over a
// small surface vocabulary, some MISC.
inline std::vector<AnnotatedDocument> random_documents(std::mt19937_64& rng, std::size_t count) {
  const std::vector<std::string> words = {"Apple", "apple", "Tesla", "Motors", "Nikola", "pomme", "Paris", "the", "of"};
  std::vector<AnnotatedDocument> docs;
  for (std::size_t d = 0; d < count; ++d) {
    AnnotatedDocument doc;
    const std::string language = (rng() % 3 == 0) ? "fr" : "en";
    doc.id = DocumentId{language, d, "0page" + std::to_string(d), "Page " + std::to_string(d)}.str();
    const std::size_t n = 5 + rng() % 40;
    for (std::size_t i = 0; i < n; ++i) doc.tokens.push_back({words[rng() % words.size()], rng() % 7 == 0});
    std::size_t pos = rng() % 3;
    while (pos < n) {
      const std::size_t len = 1 + rng() % 2;
      if (pos + len > n) break;
      Mention m;
      m.entity = rng() % 6 == 0 ? EntityId::misc() : EntityId::kb("0k" + std::to_string(rng() % 5));
      m.type = static_cast<EntityType>(rng() % 4);
      m.start_position = pos;
      m.end_position = pos + len - 1;
      m.raw_form = join_tokens(std::span(doc.tokens).subspan(pos, len));
      m.provenance = rng() % 2 ? Provenance::kDirect : Provenance::kDensified;
      doc.entities.push_back(std::move(m));
      pos += len + rng() % 4;
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace fixtures
