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


// Drives the wikidense binary end to end on the fixture corpus.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "support/fixtures.hpp"

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("wikidense_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }
  static std::string fixture(const std::string& name) { return fixtures::data_path("fixture/" + name); }

  // Runs the CLI with `args`; stdout and stderr go to files in the temp dir.
  int run(const std::string& args) {
    const std::string cmd = std::string(WIKIDENSE_CLI) + " " + args + " >" + tmp("stdout") + " 2>" + tmp("stderr");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string out() const { return fixtures::slurp(tmp("stdout")); }
  std::string err() const { return fixtures::slurp(tmp("stderr")); }

  void annotate_fixture(const std::string& workers, const std::string& prefix) {
    ASSERT_EQ(run("--workers " + workers + " build-dict --aliases " + fixture("aliases.tsv") + " --out " +
                  tmp(prefix + "dict.tsv")), 0) << err();
    ASSERT_EQ(run("--workers " + workers + " --min-count 1 cooccur --pages " + fixture("pages.txt") + " --kb-links " +
                  fixture("kb_links.tsv") + " --redirects " + fixture("redirects.tsv") + " --out " +
                  tmp(prefix + "co.tsv")), 0) << err();
    ASSERT_EQ(run("--workers " + workers + " annotate --pages " + fixture("pages.txt") + " --dict " +
                  tmp(prefix + "dict.tsv") + " --cooccur " + tmp(prefix + "co.tsv") + " --kb-links " +
                  fixture("kb_links.tsv") + " --redirects " + fixture("redirects.tsv") + " --types " +
                  fixture("types.tsv") + " --out " + tmp(prefix + "out.ndjson")), 0) << err();
  }

  fs::path dir_;
};

TEST_F(CliTest, AnnotateMatchesGolden) {
  annotate_fixture("1", "");
  EXPECT_EQ(fixtures::slurp(tmp("out.ndjson")), fixtures::slurp(fixture("golden.ndjson")));
  ASSERT_EQ(run("annotate --provenance --pages " + fixture("pages.txt") + " --dict " + tmp("dict.tsv") +
                " --cooccur " + tmp("co.tsv") + " --kb-links " + fixture("kb_links.tsv") + " --redirects " +
                fixture("redirects.tsv") + " --types " + fixture("types.tsv")), 0);
  EXPECT_EQ(out(), fixtures::slurp(fixture("golden_provenance.ndjson")));
  EXPECT_NE(err().find("wikidense: "), std::string::npos);
}

TEST_F(CliTest, ByteIdenticalAcrossWorkerCounts) {
  annotate_fixture("1", "w1_");
  annotate_fixture("8", "w8_");
  for (const char* name : {"dict.tsv", "co.tsv", "out.ndjson"}) {
    EXPECT_EQ(fixtures::slurp(tmp(std::string("w1_") + name)), fixtures::slurp(tmp(std::string("w8_") + name))) << name;
  }
  ASSERT_EQ(run("stats --in " + tmp("w1_out.ndjson") + " --out-dir " + tmp("s1")), 0);
  ASSERT_EQ(run("--workers 8 stats --in " + tmp("w8_out.ndjson") + " --out-dir " + tmp("s8")), 0);
  for (const auto& entry : fs::directory_iterator(tmp("s1"))) {
    EXPECT_EQ(fixtures::slurp(entry.path().string()),
              fixtures::slurp((fs::path(tmp("s8")) / entry.path().filename()).string()));
  }
}

TEST_F(CliTest, DefaultMinCountPrunesFixturePairs) {
  ASSERT_EQ(run("cooccur --pages " + fixture("pages.txt") + " --kb-links " + fixture("kb_links.tsv") +
                " --redirects " + fixture("redirects.tsv")), 0);
  EXPECT_EQ(out(), "");
}

TEST_F(CliTest, CanonicalizeFixtureRedirects) {
  ASSERT_EQ(run("canonicalize --redirects " + fixture("redirects.tsv")), 0);
  EXPECT_EQ(out(), "en\tNYC\tNew York City\nen\tNew York City\tNew York City\n"
                   "en\tTesla Motors\tTesla Motors\nen\tTesla Motors Inc\tTesla Motors\n");
}

TEST_F(CliTest, StatsOnListingDocument) {
  {
    std::ofstream f(tmp("listing.ndjson"));
    f << fixtures::normalize_json(fixtures::slurp(fixtures::data_path("listing1.json"))) << "\n";
  }
  ASSERT_EQ(run("stats --in " + tmp("listing.ndjson") + " --out-dir " + tmp("stats")), 0) << err();
  EXPECT_EQ(fixtures::slurp(tmp("stats/mention_counts.tsv")), "en\tNBA\t1\nen\tSerbian\t1\nen\tVlade Divac\t1\n");
  EXPECT_EQ(fixtures::slurp(tmp("stats/entity_counts.tsv")), "01vpr3\t1\n05jvx\t1\n077qn\t1\n");
  EXPECT_EQ(fixtures::slurp(tmp("stats/mention_entities.display.tsv")),
            "en\tNBA\t05jvx\t1\t100.00%\nen\tSerbian\t077qn\t1\t100.00%\nen\tVlade Divac\t01vpr3\t1\t100.00%\n");
  ASSERT_EQ(run("priors --stats-dir " + tmp("stats")), 0) << err();
  EXPECT_EQ(out(), "en\tNBA\t05jvx\t1\t1\t1\nen\tSerbian\t077qn\t1\t1\t1\nen\tVlade Divac\t01vpr3\t1\t1\t1\n");
  ASSERT_EQ(run("export-entity-seq --in " + tmp("listing.ndjson")), 0);
  EXPECT_EQ(out(), "01vpr3 077qn 05jvx\n");
}

TEST_F(CliTest, DiffIdsReport) {
  {
    std::ofstream a(tmp("a.tsv"));
    a << "m/1\tQ1\nm/2\tQ2\nm/3\tQ3\n";
    std::ofstream b(tmp("b.tsv"));
    b << "m/1\tQ1\nm/2\tQ9\nm/4\tQ4\n";
  }
  ASSERT_EQ(run("diff-ids --a " + tmp("a.tsv") + " --b " + tmp("a.tsv")), 0);
  EXPECT_NE(out().find("Different 0\n"), std::string::npos) << out();
  ASSERT_EQ(run("diff-ids --a " + tmp("a.tsv") + " --b " + tmp("b.tsv") + " --a-name DAWT --b-name Google --pairs-out " +
                tmp("pairs.tsv")), 0);
  EXPECT_EQ(out(), "Same 1\nDifferent 1\nDAWT Only 1\nGoogle Only 1\n");
  EXPECT_EQ(fixtures::slurp(tmp("pairs.tsv")), "m/2\tQ2\tQ9\n");
}

TEST_F(CliTest, ConfigFileOverriddenByFlags) {
  {
    std::ofstream cfg(tmp("run.ini"));
    cfg << "min-count=1\nwindow=0\n";
  }
  const std::string base = "cooccur --pages " + fixture("pages.txt") + " --kb-links " + fixture("kb_links.tsv") +
                           " --redirects " + fixture("redirects.tsv");
  ASSERT_EQ(run("--config " + tmp("run.ini") + " " + base), 0) << err();
  // The closest fixture anchors have one token between them.
  EXPECT_EQ(out(), "");
  ASSERT_EQ(run("--config " + tmp("run.ini") + " --window 1 " + base), 0) << err();
  EXPECT_EQ(out(), "0dr90d\t0paloalto\t1\n0edison\t0nyc\t1\n0nyc\t0edison\t1\n0paloalto\t0dr90d\t1\n");
}

TEST_F(CliTest, InputErrorsExitOne) {
  EXPECT_EQ(run("build-dict --aliases " + tmp("missing.tsv")), 1);
  EXPECT_NE(err().find("wikidense: "), std::string::npos);
  {
    std::ofstream f(tmp("bad_aliases.tsv"));
    f << "TITLE\ten\t05d1y\n";
  }
  EXPECT_EQ(run("build-dict --aliases " + tmp("bad_aliases.tsv")), 1);
  EXPECT_NE(err().find("bad_aliases.tsv:1"), std::string::npos) << err();
  {
    std::ofstream f(tmp("bad.txt"));
    f << "\x01" "en\t1\tBroken\nSee [[Open link\n";
  }
  EXPECT_EQ(run("cooccur --pages " + tmp("bad.txt") + " --kb-links " + fixture("kb_links.tsv")), 1);
  EXPECT_EQ(run("no-such-command"), 1);
  EXPECT_EQ(run("--window notanumber diff-ids --a x --b y"), 1);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(CliTest, SchemaViolationsExitTwo) {
  {
    std::ofstream f(tmp("bad.ndjson"));
    f << "{\"tokens\":[{\"raw_form\":\"a\"}],\"entities\":[{\"id_str\":\"e1\",\"type\":\"OTHER\","
         "\"start_position\":0,\"end_position\":4,\"raw_form\":\"a\"}],\"id\":\"wiki_page_id:en:1:e1:A\"}\n";
  }
  EXPECT_EQ(run("stats --in " + tmp("bad.ndjson") + " --out-dir " + tmp("s")), 2);
  EXPECT_NE(err().find("$.entities[0].end_position"), std::string::npos) << err();
  EXPECT_EQ(run("export-entity-seq --in " + tmp("bad.ndjson")), 2);
}

}  // namespace
