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

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "autoq/ingest.hpp"
#include "autoq/lexicon.hpp"
#include "autoq/objects.hpp"
#include "autoq/pruning.hpp"
#include "autoq/querygen.hpp"

namespace autoq {

// Lexicon file names shared by the data directory and workspace lexicons/.
inline constexpr const char* kLexiconNames[] = {
    "stopwords", "closed_class", "abbreviations", "gazetteer",
    "verbs",     "verb_frames",  "comparatives",  "prune_table"};

struct Config {
  double theta = 0.35;
  double tau = 0.2;
  std::size_t topk = 5;
  std::size_t min_count = 2;
  std::size_t max_queries = 100000;
  std::size_t budget = 5000;
  // Overrides keyed by lexicon name (see kLexiconNames).
  std::map<std::string, std::filesystem::path> lexicons;

  // key=value lines, '#' comments. Relative lexicon paths resolve against
  // the file's directory. Unknown keys and bad values throw DataError.
  static Config load(const std::filesystem::path& path);
  void set(const std::string& key, const std::string& value,
           const std::filesystem::path& base = {});
};

struct Resources {
  Lexicon lex;
  TypeGazetteer gaz;
  VerbLexicon verbs;
  RuleTables rules;
};

class Workspace {
 public:
  // Creates the directory layout and seeds lexicons/ from the data
  // directory when files are missing.
  static Workspace open(const std::filesystem::path& root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path corpora_dir() const { return root_ / "corpora"; }
  std::filesystem::path objects_dir() const { return root_ / "objects"; }
  std::filesystem::path queries_file() const { return root_ / "queries" / "queries.jsonl"; }
  std::filesystem::path answers_file() const { return root_ / "answers" / "answers.jsonl"; }
  std::filesystem::path history_file() const { return root_ / "answers" / "history.jsonl"; }
  std::filesystem::path labels_file() const { return root_ / "labels" / "labels.jsonl"; }
  std::filesystem::path sample_file() const { return root_ / "labels" / "sample.json"; }
  std::filesystem::path reports_dir() const { return root_ / "reports"; }
  std::filesystem::path lexicons_dir() const { return root_ / "lexicons"; }
  std::filesystem::path config_file() const { return root_ / "autoq.conf"; }

  // Config override, then the workspace copy, then the data directory.
  std::filesystem::path lexicon_path(const Config& cfg, const std::string& name) const;
  Resources load_resources(const Config& cfg) const;
  // Workspace config file when present, defaults otherwise.
  Config load_config() const;

  // All ingested corpora, sorted by id.
  std::vector<Corpus> load_corpora(const Lexicon& lex) const;
  std::vector<std::string> corpus_ids() const;

 private:
  explicit Workspace(std::filesystem::path root) : root_(std::move(root)) {}
  std::filesystem::path root_;
};

}  // namespace autoq
