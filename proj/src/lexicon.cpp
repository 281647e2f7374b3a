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

#include "autoq/lexicon.hpp"

#include <cstdlib>
#include <fstream>

#include "autoq/common.hpp"

namespace autoq {

std::string_view to_string(Pos p) {
  switch (p) {
    case Pos::kDet: return "DET";
    case Pos::kAdj: return "ADJ";
    case Pos::kNoun: return "NOUN";
    case Pos::kPropn: return "PROPN";
    case Pos::kVerb: return "VERB";
    case Pos::kAdp: return "ADP";
    case Pos::kPron: return "PRON";
    case Pos::kNum: return "NUM";
    case Pos::kOther: return "OTHER";
  }
  return "OTHER";
}

Pos parse_pos(std::string_view s) {
  for (Pos p : {Pos::kDet, Pos::kAdj, Pos::kNoun, Pos::kPropn, Pos::kVerb,
                Pos::kAdp, Pos::kPron, Pos::kNum, Pos::kOther}) {
    if (to_string(p) == s) return p;
  }
  throw DataError("unknown POS tag '" + std::string(s) + "'");
}

std::vector<TsvRow> read_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read '" + path.string() + "'");
  std::vector<TsvRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    TsvRow row;
    row.line_no = line_no;
    for (auto& f : split(line, '\t')) row.fields.emplace_back(trim(f));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("AUTOQ_DATA_DIR"); env && *env) return env;
  return AUTOQ_DEFAULT_DATA_DIR;
}

bool Lexicon::is_stopword(std::string_view lower) const {
  return stopwords.count(std::string(lower)) > 0;
}

bool Lexicon::is_abbreviation(std::string_view lower_with_dot) const {
  return abbreviations.count(std::string(lower_with_dot)) > 0;
}

namespace {

void require_columns(const TsvRow& row, std::size_t n,
                     const std::filesystem::path& path) {
  if (row.fields.size() < n || row.fields[0].empty()) {
    throw DataError(path.string() + ":" + std::to_string(row.line_no) +
                    ": expected " + std::to_string(n) + " columns");
  }
}

}  // namespace

Lexicon Lexicon::load(const std::filesystem::path& stopwords,
                      const std::filesystem::path& closed_class,
                      const std::filesystem::path& abbreviations) {
  Lexicon lex;
  for (const auto& row : read_tsv(stopwords)) {
    require_columns(row, 1, stopwords);
    lex.stopwords.insert(to_lower(row.fields[0]));
  }
  for (const auto& row : read_tsv(closed_class)) {
    require_columns(row, 2, closed_class);
    Pos p;
    try {
      p = parse_pos(row.fields[1]);
    } catch (const DataError& e) {
      throw DataError(closed_class.string() + ":" +
                      std::to_string(row.line_no) + ": " + e.what());
    }
    auto key = to_lower(row.fields[0]);
    if (p == Pos::kPropn) {
      lex.proper_nouns.insert(key);
    } else {
      lex.closed_class[key] = p;
    }
  }
  for (const auto& row : read_tsv(abbreviations)) {
    require_columns(row, 1, abbreviations);
    auto key = to_lower(row.fields[0]);
    if (key.back() != '.') key.push_back('.');
    lex.abbreviations.insert(key);
  }
  return lex;
}

Lexicon Lexicon::load_default() {
  auto dir = default_data_dir();
  return load(dir / "stopwords.tsv", dir / "closed_class.tsv",
              dir / "abbreviations.tsv");
}

}  // namespace autoq
