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
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace autoq {

enum class Pos { kDet, kAdj, kNoun, kPropn, kVerb, kAdp, kPron, kNum, kOther };

std::string_view to_string(Pos p);
Pos parse_pos(std::string_view s);

struct TsvRow {
  std::size_t line_no = 0;
  std::vector<std::string> fields;
};

// Reads a tab-separated file, skipping blank lines and lines whose first
// non-blank character is '#'. Throws DataError if the file cannot be read.
std::vector<TsvRow> read_tsv(const std::filesystem::path& path);

// Directory holding the shipped lexicons: $AUTOQ_DATA_DIR if set, otherwise
// the source-tree data/ directory baked in at build time.
std::filesystem::path default_data_dir();

// Closed-class tagging lexicon, stopword list, abbreviation list and the
// proper-noun gazetteer used by the tagger. All keys are lowercase.
struct Lexicon {
  std::unordered_set<std::string> stopwords;
  std::unordered_map<std::string, Pos> closed_class;
  std::unordered_set<std::string> abbreviations;  // includes trailing '.'
  std::unordered_set<std::string> proper_nouns;

  bool is_stopword(std::string_view lower) const;
  bool is_abbreviation(std::string_view lower_with_dot) const;

  static Lexicon load(const std::filesystem::path& stopwords,
                      const std::filesystem::path& closed_class,
                      const std::filesystem::path& abbreviations);
  static Lexicon load_default();
};

}  // namespace autoq
