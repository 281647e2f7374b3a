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

#include "autoq/workspace.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "autoq/serialize.hpp"

namespace autoq {

namespace fs = std::filesystem;

namespace {

double parse_real(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw DataError("bad value for " + key + ": '" + v + "'");
  return d;
}

std::size_t parse_count(const std::string& key, const std::string& v) {
  std::size_t n = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw DataError("bad value for " + key + ": '" + v + "'");
  }
  return n;
}

bool is_lexicon_name(std::string_view key) {
  return std::any_of(std::begin(kLexiconNames), std::end(kLexiconNames),
                     [&](const char* n) { return key == n; });
}

}  // namespace

void Config::set(const std::string& key, const std::string& value, const fs::path& base) {
  if (key == "theta" || key == "tau") {
    const double v = parse_real(key, value);
    if (v < 0.0 || v > 1.0) throw DataError(key + " must lie in [0, 1]");
    (key == "theta" ? theta : tau) = v;
  } else if (key == "topk") {
    topk = parse_count(key, value);
  } else if (key == "min_count") {
    min_count = parse_count(key, value);
  } else if (key == "max_queries") {
    max_queries = parse_count(key, value);
  } else if (key == "budget") {
    budget = parse_count(key, value);
  } else if (is_lexicon_name(key)) {
    fs::path p = value;
    lexicons[key] = p.is_relative() && !base.empty() ? base / p : p;
  } else {
    throw DataError("unknown config key '" + key + "'");
  }
}

Config Config::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read config " + path.string());
  Config cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
    }
    try {
      cfg.set(std::string(trim(t.substr(0, eq))), std::string(trim(t.substr(eq + 1))),
              path.parent_path());
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

Workspace Workspace::open(const fs::path& root) {
  Workspace ws(root);
  for (const char* d : {"corpora", "objects", "queries", "answers", "labels", "reports",
                        "lexicons"}) {
    fs::create_directories(root / d);
  }
  const auto data = default_data_dir();
  for (const char* name : kLexiconNames) {
    const auto dst = ws.lexicons_dir() / (std::string(name) + ".tsv");
    const auto src = data / (std::string(name) + ".tsv");
    if (!fs::exists(dst) && fs::exists(src)) fs::copy_file(src, dst);
  }
  return ws;
}

fs::path Workspace::lexicon_path(const Config& cfg, const std::string& name) const {
  if (auto it = cfg.lexicons.find(name); it != cfg.lexicons.end()) return it->second;
  const auto local = lexicons_dir() / (name + ".tsv");
  if (fs::exists(local)) return local;
  return default_data_dir() / (name + ".tsv");
}

Resources Workspace::load_resources(const Config& cfg) const {
  auto p = [&](const char* n) { return lexicon_path(cfg, n); };
  Resources r{Lexicon::load(p("stopwords"), p("closed_class"), p("abbreviations")),
              TypeGazetteer::load(p("gazetteer")),
              VerbLexicon::load(p("verbs")),
              {PruneRuleTable::load(p("prune_table")), VerbFrameTable::load(p("verb_frames")),
               ComparativeLexicon::load(p("comparatives"))}};
  r.rules.frames.require_covers(r.verbs);
  return r;
}

Config Workspace::load_config() const {
  return fs::exists(config_file()) ? Config::load(config_file()) : Config{};
}

std::vector<std::string> Workspace::corpus_ids() const {
  std::vector<std::string> ids;
  if (!fs::exists(corpora_dir())) return ids;
  for (const auto& e : fs::directory_iterator(corpora_dir())) {
    if (e.is_regular_file() && e.path().extension() == ".jsonl") {
      ids.push_back(e.path().stem().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<Corpus> Workspace::load_corpora(const Lexicon& lex) const {
  std::vector<Corpus> out;
  for (const auto& id : corpus_ids()) {
    out.push_back(read_corpus(corpora_dir() / (id + ".jsonl"), lex));
    if (out.back().corpus_id != id) {
      throw DataError("corpus file " + id + ".jsonl holds corpus '" +
                      out.back().corpus_id + "'");
    }
  }
  return out;
}

}  // namespace autoq
