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

// wikidense: command-line driver for the densification pipeline.
//
// Exit codes: 0 success, 1 input or usage error, 2 annotated-document schema
// violation. Diagnostics go to stderr; stdout only carries requested output.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wikidense/wikidense.hpp"

namespace {

using namespace wikidense;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSchema = 2;

// "-" is stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw InputError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void close() {
    stream().flush();
    if (file_.is_open()) file_.close();
  }

 private:
  std::ofstream file_;
};

std::vector<AnnotatedDocument> load_documents(const std::vector<std::string>& paths) {
  std::vector<AnnotatedDocument> docs;
  for (const std::string& path : paths) {
    std::ifstream in = open_input(path);
    std::vector<AnnotatedDocument> part = read_ndjson(in, path);
    docs.insert(docs.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return docs;
}

void note(const std::string& message) { std::cerr << "wikidense: " << message << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Builds alias dictionaries and co-occurrence tables from wiki markup and densifies entity links."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file; flags override it");

  PipelineConfig config;
  app.add_option("--window", config.cooccurrence.window, "Max tokens between co-occurring anchors")->capture_default_str();
  app.add_option("--min-count", config.cooccurrence.min_count, "Min pair count kept in the co-occurrence table")
      ->capture_default_str();
  app.add_option("--max-neighbors", config.cooccurrence.max_neighbors, "Co-occurring entities kept per entity")
      ->capture_default_str();
  app.add_option("--alias-cap", config.dictionary.prune.cap, "Max aliases kept per entity")->capture_default_str();
  app.add_option("--align-threshold", config.dictionary.prune.threshold, "Min average alignment to keep an alias")
      ->capture_default_str();
  app.add_option("--top-entities", config.dictionary.top_entities, "Candidate entities kept per alias")
      ->capture_default_str();
  app.add_option("--max-shingle", config.densify.max_shingle, "Longest token sequence matched against aliases")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", config.workers, "Worker threads (0 = available parallelism)")->capture_default_str();

  std::vector<std::string> alias_paths, redirect_paths, kb_link_paths, page_paths, input_paths;
  std::string out = "-", dict_path, cooccur_path, types_path, stats_dir, out_dir = ".";
  std::string language = "en", map_a, map_b, name_a = "A", name_b = "B", pairs_out;
  bool provenance = false;
  bool page_level = false;

  auto* build_dict = app.add_subcommand("build-dict", "Alias TSVs -> pruned candidate dictionary dump");
  build_dict->add_option("--aliases", alias_paths, "source \\t lang \\t entity \\t alias \\t frequency")->required();
  build_dict->add_option("--out", out, "Dictionary dump ('-' = stdout)");

  auto* canon = app.add_subcommand("canonicalize", "Redirect TSV -> canonical title map");
  canon->add_option("--redirects", redirect_paths, "lang \\t from \\t to")->required();
  canon->add_option("--out", out, "lang \\t title \\t canonical");

  auto* cooccur = app.add_subcommand("cooccur", "Pages + article map -> pruned co-occurrence TSV");
  cooccur->add_option("--pages", page_paths, "Page files")->required();
  cooccur->add_option("--kb-links", kb_link_paths, "lang \\t title \\t entity")->required();
  cooccur->add_option("--redirects", redirect_paths, "lang \\t from \\t to");
  cooccur->add_option("--lang", language, "Language of single-document page files");
  cooccur->add_flag("--page-level", page_level, "Count each pair at most once per page");
  cooccur->add_option("--out", out, "entity_a \\t entity_b \\t count");

  auto* annotate = app.add_subcommand("annotate", "Pages + dictionary + co-occurrence -> annotated NDJSON");
  annotate->add_option("--pages", page_paths, "Page files")->required();
  annotate->add_option("--dict", dict_path, "Dictionary dump from build-dict")->required();
  annotate->add_option("--cooccur", cooccur_path, "Co-occurrence TSV from cooccur")->required();
  annotate->add_option("--kb-links", kb_link_paths, "lang \\t title \\t entity")->required();
  annotate->add_option("--redirects", redirect_paths, "lang \\t from \\t to");
  annotate->add_option("--types", types_path, "entity \\t PERSON|LOCATION|ORGANIZATION|OTHER");
  annotate->add_option("--lang", language, "Language of single-document page files");
  annotate->add_flag("--provenance", provenance, "Write DIRECT/DENSIFIED provenance per entity");
  annotate->add_option("--out", out, "NDJSON output");

  auto* stats = app.add_subcommand("stats", "Annotated NDJSON -> mention/entity statistics TSVs");
  stats->add_option("--in", input_paths, "NDJSON files")->required();
  stats->add_option("--out-dir", out_dir, "Directory for the TSV dumps");

  auto* priors = app.add_subcommand("priors", "Statistics dumps -> mention/entity prior table");
  priors->add_option("--stats-dir", stats_dir, "Directory written by 'stats'")->required();
  priors->add_option("--out", out, "lang \\t mention \\t entity \\t pair_count \\t mention_count \\t prior");

  auto* diff_ids = app.add_subcommand("diff-ids", "Compare two id mapping TSVs");
  diff_ids->add_option("--a", map_a, "id_a \\t id_b")->required();
  diff_ids->add_option("--b", map_b, "id_a \\t id_b")->required();
  diff_ids->add_option("--a-name", name_a, "Label of the first mapping in the report");
  diff_ids->add_option("--b-name", name_b, "Label of the second mapping in the report");
  diff_ids->add_option("--pairs-out", pairs_out, "Write differing keys: key \\t a \\t b");

  auto* export_seq = app.add_subcommand("export-entity-seq", "Annotated NDJSON -> one entity sequence per line");
  export_seq->add_option("--in", input_paths, "NDJSON files")->required();
  export_seq->add_option("--out", out, "Sequence file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  config.cooccurrence.page_level = page_level;

  try {
    if (*build_dict) {
      const CandidateDictionary dictionary = build_dictionary(load_alias_records(alias_paths), config.dictionary);
      Output o(out);
      dictionary.write_tsv(o.stream());
      o.close();
      note("dictionary: " + std::to_string(dictionary.entity_to_aliases().size()) + " entities, " +
           std::to_string(dictionary.alias_to_entities().size()) + " aliases");
    } else if (*canon) {
      const CanonicalMaps maps = load_canonical_maps(redirect_paths);
      Output o(out);
      write_canonical_maps(o.stream(), maps);
      o.close();
    } else if (*cooccur) {
      const ArticleEntityMap article_map = load_article_map(redirect_paths, kb_link_paths);
      for (const TitleConflict& c : article_map.conflicts()) {
        note("title conflict " + c.language + ":" + c.title + " kept " + c.kept.str() + " dropped " + c.dropped.str());
      }
      const std::vector<WikiPage> pages = load_pages(page_paths, language);
      const CooccurrenceTable table = prune(extract(pages, article_map, config.cooccurrence, config.workers),
                                            config.cooccurrence);
      Output o(out);
      table.write_tsv(o.stream());
      o.close();
      note("co-occurrence: " + std::to_string(table.lists().size()) + " entities from " +
           std::to_string(pages.size()) + " pages");
    } else if (*annotate) {
      const ArticleEntityMap article_map = load_article_map(redirect_paths, kb_link_paths);
      std::ifstream dict_in = open_input(dict_path);
      const CandidateDictionary dictionary = CandidateDictionary::read_tsv(dict_in, dict_path);
      std::ifstream cooccur_in = open_input(cooccur_path);
      const CooccurrenceTable table = CooccurrenceTable::read_tsv(cooccur_in, cooccur_path);
      EntityTypes types;
      if (!types_path.empty()) {
        std::ifstream types_in = open_input(types_path);
        types = EntityTypes::read_tsv(types_in, types_path);
      }
      const std::vector<WikiPage> pages = load_pages(page_paths, language);
      const Densifier densifier(dictionary, table, article_map, types, config.densify);
      const std::vector<AnnotatedDocument> docs = annotate_corpus(pages, densifier, config.workers);
      Output o(out);
      write_ndjson(o.stream(), docs, JsonOptions{.provenance = provenance});
      o.close();
      note("annotated " + std::to_string(docs.size()) + " documents");
    } else if (*stats) {
      const CorpusStats corpus = aggregate(load_documents(input_paths));
      std::filesystem::create_directories(out_dir);
      const auto write = [&](const std::string& name, auto&& fn) {
        Output o((std::filesystem::path(out_dir) / name).string());
        fn(o.stream());
        o.close();
      };
      write("mention_counts.tsv", [&](std::ostream& s) { corpus.mentions.write_tsv(s); });
      write("entity_counts.tsv", [&](std::ostream& s) { corpus.entities.write_counts_tsv(s); });
      write("entity_surfaces.tsv", [&](std::ostream& s) { corpus.entities.write_surfaces_tsv(s, ShareFormat::kMachine); });
      write("entity_surfaces.display.tsv",
            [&](std::ostream& s) { corpus.entities.write_surfaces_tsv(s, ShareFormat::kDisplay); });
      write("mention_entities.tsv", [&](std::ostream& s) { corpus.mention_entities.write_tsv(s, ShareFormat::kMachine); });
      write("mention_entities.display.tsv",
            [&](std::ostream& s) { corpus.mention_entities.write_tsv(s, ShareFormat::kDisplay); });
    } else if (*priors) {
      const auto dir = std::filesystem::path(stats_dir);
      std::ifstream mentions_in = open_input((dir / "mention_counts.tsv").string());
      const MentionStats mentions = MentionStats::read_tsv(mentions_in, "mention_counts.tsv");
      std::ifstream pairs_in = open_input((dir / "mention_entities.tsv").string());
      const MentionEntityStats pairs = MentionEntityStats::read_tsv(pairs_in, "mention_entities.tsv");
      Output o(out);
      write_priors_tsv(o.stream(), mentions, pairs);
      o.close();
    } else if (*diff_ids) {
      std::ifstream a_in = open_input(map_a);
      std::ifstream b_in = open_input(map_b);
      const IdMappingDiff diff = diff_mappings(read_id_mapping(a_in, map_a), read_id_mapping(b_in, map_b));
      std::cout << "Same " << diff.same << '\n'
                << "Different " << diff.different << '\n'
                << name_a << " Only " << diff.a_only << '\n'
                << name_b << " Only " << diff.b_only << '\n';
      if (!pairs_out.empty()) {
        Output o(pairs_out);
        for (const DifferentPair& p : diff.different_pairs) o.stream() << p.key << '\t' << p.a_value << '\t' << p.b_value << '\n';
        o.close();
      }
    } else if (*export_seq) {
      const std::vector<AnnotatedDocument> docs = load_documents(input_paths);
      Output o(out);
      for (const AnnotatedDocument& doc : docs) o.stream() << entity_sequence(doc) << '\n';
      o.close();
    }
  } catch (const SchemaViolation& e) {
    std::cerr << "wikidense: schema violation: " << e.what() << '\n';
    return kExitSchema;
  } catch (const Error& e) {
    std::cerr << "wikidense: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "wikidense: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
