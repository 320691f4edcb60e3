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

// File-level glue shared by the CLI and the integration tests.

#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "wikidense/cooccurrence.hpp"
#include "wikidense/corpus_model.hpp"
#include "wikidense/densifier.hpp"
#include "wikidense/dictionary.hpp"
#include "wikidense/id_space.hpp"

namespace wikidense {

struct PipelineConfig {
  CooccurrenceOptions cooccurrence;
  DictionaryOptions dictionary;
  DensifyOptions densify;
  unsigned workers = 0;  // 0 = available parallelism
};

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// A page file is either a record stream (starts with \x01) or one document
// whose title is the file stem and page id its position in `paths`.
inline std::vector<WikiPage> load_pages(std::span<const std::string> paths, const std::string& language = "en") {
  std::vector<WikiPage> pages;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const std::string content = read_file(paths[i]);
    if (!content.empty() && content.front() == '\x01') {
      std::istringstream in(content);
      for (const PageRecord& record : read_page_stream(in, paths[i])) {
        try {
          pages.push_back(parse_record(record));
        } catch (const MalformedMarkup& e) {
          throw InputError(paths[i] + ": page " + std::to_string(record.page_id) + ": " + e.what());
        }
      }
    } else {
      const std::string stem = std::filesystem::path(paths[i]).stem().string();
      try {
        pages.push_back(parse_page(content, language, i, stem));
      } catch (const MalformedMarkup& e) {
        throw InputError(paths[i] + ": " + e.what());
      }
    }
  }
  return pages;
}

inline std::vector<AliasRecord> load_alias_records(std::span<const std::string> paths) {
  std::vector<AliasRecord> records;
  for (const std::string& path : paths) {
    std::ifstream in = open_input(path);
    std::vector<AliasRecord> part = read_alias_records(in, path);
    records.insert(records.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return records;
}

inline CanonicalMaps load_canonical_maps(std::span<const std::string> redirect_paths) {
  std::map<std::string, RedirectGraph> graphs;
  for (const std::string& path : redirect_paths) {
    std::ifstream in = open_input(path);
    for (auto& [language, graph] : read_redirects(in, path)) {
      graphs[language].edges.merge(graph.edges);
    }
  }
  return canonicalize_all(graphs);
}

inline ArticleEntityMap load_article_map(std::span<const std::string> redirect_paths,
                                         std::span<const std::string> kb_link_paths) {
  std::vector<KbLink> links;
  for (const std::string& path : kb_link_paths) {
    std::ifstream in = open_input(path);
    std::vector<KbLink> part = read_kb_links(in, path);
    links.insert(links.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return build_article_entity_map(links, load_canonical_maps(redirect_paths));
}

}  // namespace wikidense
