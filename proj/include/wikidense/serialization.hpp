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

// Annotated-document JSON (one document per line in corpus files) and the
// entity-sequence export used as embedding-trainer input.

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wikidense/base.hpp"
#include "wikidense/densifier.hpp"

namespace wikidense {

struct JsonOptions {
  // Appends "provenance" to each entity. Off keeps the published layout.
  bool provenance = false;
};

inline std::string to_json(const AnnotatedDocument& doc, const JsonOptions& options = {}) {
  using Json = nlohmann::ordered_json;
  Json tokens = Json::array();
  for (const Token& t : doc.tokens) {
    Json token = {{"raw_form", t.raw_form}};
    if (t.sentence_break) token["break"] = Json::array({"SENTENCE"});
    tokens.push_back(std::move(token));
  }
  Json entities = Json::array();
  for (const Mention& m : doc.entities) {
    Json entity = {{"id_str", m.entity.str()},
                   {"type", to_string(m.type)},
                   {"start_position", m.start_position},
                   {"end_position", m.end_position},
                   {"raw_form", m.raw_form}};
    if (options.provenance) entity["provenance"] = to_string(m.provenance);
    entities.push_back(std::move(entity));
  }
  Json root;
  root["tokens"] = std::move(tokens);
  root["entities"] = std::move(entities);
  root["id"] = doc.id;
  return root.dump();
}

namespace detail {

using Json = nlohmann::json;

inline const Json& require(const Json& object, const char* key, const std::string& path) {
  const auto it = object.find(key);
  if (it == object.end()) throw SchemaViolation(path + "." + key, "missing");
  return *it;
}

inline std::string require_string(const Json& object, const char* key, const std::string& path) {
  const Json& value = require(object, key, path);
  if (!value.is_string()) throw SchemaViolation(path + "." + key, "expected string");
  return value.get<std::string>();
}

inline std::size_t require_index(const Json& object, const char* key, const std::string& path) {
  const Json& value = require(object, key, path);
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
    throw SchemaViolation(path + "." + key, "expected non-negative integer");
  }
  return value.get<std::size_t>();
}

inline Token parse_token(const Json& value, const std::string& path) {
  if (!value.is_object()) throw SchemaViolation(path, "expected object");
  Token token;
  token.raw_form = require_string(value, "raw_form", path);
  if (token.raw_form.empty()) throw SchemaViolation(path + ".raw_form", "empty");
  for (std::size_t pos = 0; pos < token.raw_form.size();) {
    if (text::is_space(text::decode_utf8(token.raw_form, pos))) {
      throw SchemaViolation(path + ".raw_form", "contains whitespace");
    }
  }
  if (const auto it = value.find("break"); it != value.end()) {
    if (!it->is_array()) throw SchemaViolation(path + ".break", "expected array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& b = (*it)[i];
      if (!b.is_string() || (b != "SENTENCE" && b != "PARAGRAPH")) {
        throw SchemaViolation(path + ".break[" + std::to_string(i) + "]", "expected \"SENTENCE\"");
      }
      token.sentence_break = true;
    }
  }
  return token;
}

inline Mention parse_mention(const Json& value, const std::string& path, std::span<const Token> tokens) {
  if (!value.is_object()) throw SchemaViolation(path, "expected object");
  Mention m;
  try {
    m.entity = EntityId::parse(require_string(value, "id_str", path));
  } catch (const InvalidEntityId& e) {
    throw SchemaViolation(path + ".id_str", e.what());
  }
  const auto type = parse_entity_type(require_string(value, "type", path));
  if (!type) throw SchemaViolation(path + ".type", "unknown entity type");
  m.type = *type;
  m.start_position = require_index(value, "start_position", path);
  m.end_position = require_index(value, "end_position", path);
  if (m.start_position > m.end_position) throw SchemaViolation(path + ".end_position", "before start_position");
  if (m.end_position >= tokens.size()) throw SchemaViolation(path + ".end_position", "past the last token");
  m.raw_form = require_string(value, "raw_form", path);
  if (m.raw_form != join_tokens(tokens.subspan(m.start_position, m.end_position - m.start_position + 1))) {
    throw SchemaViolation(path + ".raw_form", "does not match the covered tokens");
  }
  if (const auto it = value.find("provenance"); it != value.end()) {
    if (*it == "DIRECT") {
      m.provenance = Provenance::kDirect;
    } else if (*it == "DENSIFIED") {
      m.provenance = Provenance::kDensified;
    } else {
      throw SchemaViolation(path + ".provenance", "expected DIRECT or DENSIFIED");
    }
  }
  return m;
}

}  // namespace detail

// Parses and validates one document: span bounds, surface forms, ordering
// and non-overlap of mentions, id layout.
inline AnnotatedDocument from_json(std::string_view text) {
  detail::Json root;
  try {
    root = detail::Json::parse(text);
  } catch (const detail::Json::exception& e) {
    throw SchemaViolation("$", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw SchemaViolation("$", "expected object");

  AnnotatedDocument doc;
  const detail::Json& tokens = detail::require(root, "tokens", "$");
  if (!tokens.is_array()) throw SchemaViolation("$.tokens", "expected array");
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    doc.tokens.push_back(detail::parse_token(tokens[i], "$.tokens[" + std::to_string(i) + "]"));
  }

  const detail::Json& entities = detail::require(root, "entities", "$");
  if (!entities.is_array()) throw SchemaViolation("$.entities", "expected array");
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const std::string path = "$.entities[" + std::to_string(i) + "]";
    Mention m = detail::parse_mention(entities[i], path, doc.tokens);
    if (!doc.entities.empty() && m.start_position <= doc.entities.back().end_position) {
      throw SchemaViolation(path + ".start_position", "mentions must be sorted and non-overlapping");
    }
    doc.entities.push_back(std::move(m));
  }

  doc.id = detail::require_string(root, "id", "$");
  if (!DocumentId::parse(doc.id)) throw SchemaViolation("$.id", "expected wiki_page_id:<lang>:<page_id>:<entity>:<title>");
  return doc;
}

inline void write_ndjson(std::ostream& out, std::span<const AnnotatedDocument> docs, const JsonOptions& options = {}) {
  for (const AnnotatedDocument& doc : docs) out << to_json(doc, options) << '\n';
}

inline std::vector<AnnotatedDocument> read_ndjson(std::istream& in, std::string_view source = "<ndjson>") {
  std::vector<AnnotatedDocument> docs;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    try {
      docs.push_back(from_json(line));
    } catch (const SchemaViolation& e) {
      throw SchemaViolation(std::string(source) + ":" + std::to_string(line_number) + ":" + e.path(), e.message());
    }
  }
  return docs;
}

// Entity ids of the KB mentions in start order, space separated.
inline std::string entity_sequence(const AnnotatedDocument& doc) {
  std::string out;
  for (const Mention& m : doc.entities) {
    if (!m.entity.is_kb()) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(m.entity.value());
  }
  return out;
}

}  // namespace wikidense
