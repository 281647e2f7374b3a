// Copyright 2026 The autoq Authors.
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

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "autoq/ingest.hpp"
#include "autoq/lexicon.hpp"
#include "autoq/objects.hpp"
#include "autoq/pruning.hpp"
#include "autoq/querygen.hpp"

namespace autoq::test {

inline const Lexicon& lex() {
  static const Lexicon l = Lexicon::load_default();
  return l;
}

inline const TypeGazetteer& gaz() {
  static const TypeGazetteer g = TypeGazetteer::load_default();
  return g;
}

inline const VerbLexicon& verbs() {
  static const VerbLexicon v = VerbLexicon::load_default();
  return v;
}

inline const ComparativeLexicon& adjectives() {
  static const ComparativeLexicon c = ComparativeLexicon::load_default();
  return c;
}

inline const RuleTables& rules() {
  static const RuleTables r{PruneRuleTable::default_table(),
                            VerbFrameTable::load(default_data_dir() / "verb_frames.tsv"),
                            adjectives()};
  return r;
}

inline constexpr const char* kGrantText = "General Grant was in the US Civil War.";

inline Corpus corpus_from(const std::string& id, const std::vector<std::string>& texts) {
  std::vector<Document> docs;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    docs.push_back(Document{"d" + std::to_string(i), "", texts[i], {}});
  }
  return build_corpus(id, std::move(docs), lex());
}

inline Corpus grant_corpus() { return corpus_from("grant", {kGrantText}); }

inline std::filesystem::path data_file(const std::string& name) {
  return std::filesystem::path(AUTOQ_TEST_DATA) / name;
}

// The three desk-scale fixture corpora, sorted by id.
inline std::vector<Corpus> fixture_corpora() {
  return {ingest_corpus(data_file("civil_war.txt"), "civil_war", lex()),
          ingest_corpus(data_file("oil.jsonl"), "oil", lex()),
          ingest_corpus(data_file("poetry.txt"), "poetry", lex())};
}

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "autoq-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Random text over a small noun vocabulary, for property tests that need
// objects sharing contexts.
inline std::string random_text(std::mt19937_64& rng, std::size_t sentences) {
  static const std::vector<std::string> nouns = {
      "river", "castle", "farmer", "engine", "poetry", "price",  "trade",
      "war",   "harbor", "miller", "bridge", "wheat",  "growth", "music"};
  static const std::vector<std::string> verbs = {"made", "found", "kept", "held", "built"};
  static const std::vector<std::string> adjs = {"old", "large", "quiet", "new"};
  auto pick = [&](const std::vector<std::string>& v) -> const std::string& {
    return v[rng() % v.size()];
  };
  std::string text;
  for (std::size_t i = 0; i < sentences; ++i) {
    std::string s = "The " + pick(nouns) + " " + pick(verbs) + " the ";
    if (rng() % 2) s += pick(adjs) + " ";
    s += pick(nouns);
    if (rng() % 2) s += " near the " + pick(nouns);
    s += ". ";
    s[0] = 'T';
    text += s;
  }
  return text;
}

}  // namespace autoq::test
