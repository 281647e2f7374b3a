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

#include "autoq/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "autoq/common.hpp"

namespace autoq {

std::string SentId::str() const {
  return corpus_id + "/" + doc_id + "#" + std::to_string(index);
}

SentId SentId::parse(std::string_view s) {
  auto slash = s.find('/');
  auto hash = s.rfind('#');
  if (slash == std::string_view::npos || hash == std::string_view::npos ||
      hash < slash || hash + 1 == s.size()) {
    throw DataError("malformed sentence id '" + std::string(s) + "'");
  }
  SentId id;
  id.corpus_id = std::string(s.substr(0, slash));
  id.doc_id = std::string(s.substr(slash + 1, hash - slash - 1));
  try {
    std::size_t used = 0;
    auto digits = std::string(s.substr(hash + 1));
    id.index = std::stoul(digits, &used);
    if (used != digits.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw DataError("malformed sentence id '" + std::string(s) + "'");
  }
  return id;
}

std::string Sentence::chunk_text(const Chunk& c) const {
  if (c.first >= c.last || c.last > tokens.size()) return {};
  return text.substr(tokens[c.first].begin,
                     tokens[c.last - 1].end - tokens[c.first].begin);
}

std::string Sentence::reconstruct() const {
  std::string out;
  std::size_t prev = 0;
  for (const auto& t : tokens) {
    out.append(text, prev, t.begin - prev);
    out.append(t.surface);
    prev = t.end;
  }
  out.append(text, prev, std::string::npos);
  return out;
}

std::size_t Corpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& d : documents) n += d.sentences.size();
  return n;
}

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_terminal(char c) { return c == '.' || c == '?' || c == '!'; }

// Start of the whitespace-delimited word that ends at `end` (exclusive).
std::size_t word_start(std::string_view text, std::size_t end) {
  std::size_t b = end;
  while (b > 0 && !is_space(text[b - 1])) --b;
  return b;
}

}  // namespace

std::vector<TextSpan> segment_sentences(std::string_view text,
                                        const Lexicon& lex) {
  std::vector<TextSpan> spans;
  auto body = trim(text);
  if (body.empty()) return spans;
  const std::size_t base = static_cast<std::size_t>(body.data() - text.data());
  const std::size_t limit = base + body.size();

  std::size_t start = base;
  std::size_t i = base;
  while (i < limit) {
    if (!is_terminal(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < limit && is_terminal(text[j])) ++j;
    if (j >= limit || !is_space(text[j])) {
      i = j;
      continue;
    }
    std::size_t k = j;
    while (k < limit && is_space(text[k])) ++k;
    if (k >= limit || !is_upper_ascii(text[k])) {
      i = j;
      continue;
    }
    if (text[i] == '.' && j == i + 1) {
      auto w = word_start(text, i);
      auto word = to_lower(text.substr(w, i + 1 - w));
      // Strip leading punctuation such as an opening parenthesis.
      while (!word.empty() && !is_word_byte(word.front())) word.erase(0, 1);
      if (lex.is_abbreviation(word)) {
        i = j;
        continue;
      }
    }
    spans.push_back({start, j});
    start = k;
    i = k;
  }
  if (start < limit) spans.push_back({start, limit});
  return spans;
}

std::string lemmatize_noun(std::string_view lower) {
  static const std::unordered_map<std::string, std::string> kIrregular = {
      {"children", "child"}, {"men", "man"},       {"women", "woman"},
      {"people", "person"},  {"mice", "mouse"},    {"feet", "foot"},
      {"teeth", "tooth"},    {"geese", "goose"},   {"oxen", "ox"},
      {"data", "data"},      {"criteria", "criterion"},
      {"phenomena", "phenomenon"},
  };
  static const std::unordered_set<std::string> kInvariant = {
      "news",     "series",    "species",  "physics", "mathematics",
      "politics", "economics", "ethics",   "bias",    "atlas",
      "canvas",   "gas",       "lens",     "chaos",   "thesis",
      "crisis",   "analysis",  "diagnosis", "corps",  "means",
  };
  std::string w(lower);
  if (auto it = kIrregular.find(w); it != kIrregular.end()) return it->second;
  if (kInvariant.count(w) || w.size() <= 3) return w;
  if (ends_with(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  for (std::string_view suf : {"sses", "ches", "shes", "xes", "zes"}) {
    if (ends_with(w, suf)) return w.substr(0, w.size() - 2);
  }
  if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
      !ends_with(w, "is")) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

namespace {

bool is_acronym(std::string_view s) {
  int letters = 0;
  for (char c : s) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      if (!is_upper_ascii(c)) return false;
      ++letters;
    }
  }
  return letters >= 2;
}

std::vector<Token> tokenize(std::string_view text, const Lexicon& lex) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (!is_word_byte(c)) {
      Token t;
      t.begin = i;
      t.end = i + 1;
      t.surface = std::string(1, c);
      out.push_back(std::move(t));
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n) {
      if (is_word_byte(text[j])) {
        ++j;
      } else if ((text[j] == '-' || text[j] == '\'' || text[j] == '.') &&
                 j + 1 < n && is_word_byte(text[j + 1])) {
        ++j;
      } else {
        break;
      }
    }
    if (j < n && text[j] == '.' &&
        lex.is_abbreviation(to_lower(text.substr(i, j - i)) + ".")) {
      ++j;
    }
    std::string_view word = text.substr(i, j - i);
    if (word.size() > 2 &&
        (ends_with(word, "'s") || ends_with(word, "'S"))) {
      Token base;
      base.begin = i;
      base.end = j - 2;
      base.surface = std::string(word.substr(0, word.size() - 2));
      out.push_back(std::move(base));
      Token clitic;
      clitic.begin = j - 2;
      clitic.end = j;
      clitic.surface = std::string(word.substr(word.size() - 2));
      out.push_back(std::move(clitic));
    } else {
      Token t;
      t.begin = i;
      t.end = j;
      t.surface = std::string(word);
      out.push_back(std::move(t));
    }
    i = j;
  }
  return out;
}

bool is_capitalized_word(const Token& t) {
  return starts_with_upper(t.surface) && has_alnum(t.surface);
}

Pos suffix_tag(std::string_view lower) {
  auto long_enough = [&](std::size_t suffix_len) {
    return lower.size() >= suffix_len + 3;
  };
  if (ends_with(lower, "ly") && long_enough(2)) return Pos::kOther;
  if (ends_with(lower, "ing") && long_enough(3)) return Pos::kVerb;
  if (ends_with(lower, "ed") && long_enough(2)) return Pos::kVerb;
  for (std::string_view suf : {"tion", "ism", "ness", "ity"}) {
    if (ends_with(lower, suf) && long_enough(suf.size())) return Pos::kNoun;
  }
  return Pos::kNoun;
}

void tag_tokens(std::vector<Token>& tokens, const Lexicon& lex,
                bool sentence_mode) {
  // Index of the first word token; leading quotes and brackets are skipped.
  std::size_t initial = tokens.size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (has_alnum(tokens[i].surface)) {
      initial = i;
      break;
    }
  }

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Token& t = tokens[i];
    const std::string lower = to_lower(t.surface);
    const bool proper_candidate =
        is_capitalized_word(t) &&
        (!sentence_mode || i != initial || lex.proper_nouns.count(lower) > 0 ||
         (i + 1 < tokens.size() && is_capitalized_word(tokens[i + 1])));
    auto it = lex.closed_class.find(lower);
    // Acronyms ("US") never match the lowercase lexicon. Open-class entries
    // (ADJ, NOUN) yield to capitalization so names like "Great Britain"
    // stay proper.
    const bool lexicon_hit =
        it != lex.closed_class.end() && !is_acronym(t.surface) &&
        !(proper_candidate &&
          (it->second == Pos::kAdj || it->second == Pos::kNoun));
    if (!has_alnum(t.surface)) {
      t.pos = Pos::kOther;
    } else if (std::isdigit(static_cast<unsigned char>(t.surface.front()))) {
      t.pos = Pos::kNum;
    } else if (lexicon_hit) {
      t.pos = it->second;
    } else if (proper_candidate) {
      t.pos = Pos::kPropn;
    } else {
      t.pos = suffix_tag(lower);
    }

    if (t.pos == Pos::kPropn) {
      t.lemma = t.surface;
    } else if (t.pos == Pos::kNoun) {
      t.lemma = lemmatize_noun(lower);
    } else {
      t.lemma = lower;
    }
    t.is_stopword = t.pos != Pos::kPropn && lex.is_stopword(lower);
  }
}

std::vector<Chunk> chunk_noun_phrases(const std::vector<Token>& tokens) {
  std::vector<Chunk> chunks;
  const std::size_t n = tokens.size();
  auto is_nominal = [&](std::size_t k) {
    return tokens[k].pos == Pos::kNoun || tokens[k].pos == Pos::kPropn;
  };
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    if (tokens[j].pos == Pos::kDet) ++j;
    while (j < n && tokens[j].pos == Pos::kAdj) ++j;
    std::size_t k = j;
    while (k < n && is_nominal(k)) ++k;
    if (k > j) {
      chunks.push_back({i, k});
      i = k;
    } else {
      ++i;
    }
  }
  return chunks;
}

Sentence analyze(std::string_view text, const Lexicon& lex, bool sentence_mode) {
  Sentence s;
  auto body = trim(text);
  if (sentence_mode) {
    std::size_t cut = body.size();
    while (cut > 0 && is_terminal(body[cut - 1])) --cut;
    s.terminator = std::string(body.substr(cut));
    body = trim(body.substr(0, cut));
  }
  s.text = std::string(body);
  s.tokens = tokenize(s.text, lex);
  tag_tokens(s.tokens, lex, sentence_mode);
  s.chunks = chunk_noun_phrases(s.tokens);
  return s;
}

}  // namespace

Sentence analyze_sentence(std::string_view text, const Lexicon& lex) {
  return analyze(text, lex, true);
}

Sentence analyze_phrase(std::string_view text, const Lexicon& lex) {
  return analyze(text, lex, false);
}

std::vector<std::string> content_lemmas(const Sentence& s) {
  std::set<std::string> out;
  for (const auto& t : s.tokens) {
    if (t.is_stopword || !has_alnum(t.surface)) continue;
    out.insert(to_lower(t.lemma));
  }
  return {out.begin(), out.end()};
}

bool valid_corpus_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
           c == '_' || c == '-';
  });
}

Corpus build_corpus(const std::string& corpus_id, std::vector<Document> docs,
                    const Lexicon& lex) {
  if (!valid_corpus_id(corpus_id)) {
    throw DataError("invalid corpus id '" + corpus_id + "'");
  }
  if (docs.empty()) throw DataError("empty corpus '" + corpus_id + "'");
  std::unordered_set<std::string> seen;
  Corpus corpus;
  corpus.corpus_id = corpus_id;
  for (auto& doc : docs) {
    if (!seen.insert(doc.doc_id).second) {
      throw DataError("duplicate doc_id '" + doc.doc_id + "' in corpus '" +
                      corpus_id + "'");
    }
    if (trim(doc.text).empty()) {
      throw DataError("document '" + doc.doc_id + "' has no text");
    }
    doc.sentences.clear();
    std::size_t index = 0;
    for (const auto& span : segment_sentences(doc.text, lex)) {
      Sentence s = analyze_sentence(
          std::string_view(doc.text).substr(span.begin, span.end - span.begin),
          lex);
      if (s.tokens.empty()) continue;
      s.id = SentId{corpus_id, doc.doc_id, index++};
      s.begin = span.begin;
      s.end = span.end;
      doc.sentences.push_back(std::move(s));
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read corpus file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw DataError("error reading '" + path.string() + "'");
  return ss.str();
}

std::vector<Document> parse_jsonl_documents(const std::string& content,
                                            const std::filesystem::path& path) {
  std::vector<Document> docs;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto where = path.string() + ":" + std::to_string(line_no);
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(where + ": malformed JSONL record: " + e.what());
    }
    if (!rec.is_object()) throw DataError(where + ": record is not an object");
    auto get_string = [&](const char* key, bool required) -> std::string {
      auto it = rec.find(key);
      if (it == rec.end() || it->is_null()) {
        if (required) throw DataError(where + ": missing \"" + key + "\"");
        return {};
      }
      if (!it->is_string()) {
        throw DataError(where + ": \"" + key + "\" must be a string");
      }
      return it->get<std::string>();
    };
    Document d;
    d.doc_id = get_string("doc_id", true);
    d.title = get_string("title", false);
    d.text = get_string("text", true);
    if (d.doc_id.empty()) throw DataError(where + ": empty doc_id");
    if (trim(d.text).empty()) throw DataError(where + ": empty text");
    docs.push_back(std::move(d));
  }
  return docs;
}

}  // namespace

Corpus ingest_corpus(const std::filesystem::path& path,
                     const std::string& corpus_id, const Lexicon& lex) {
  auto content = read_file(path);
  auto ext = to_lower(path.extension().string());
  std::vector<Document> docs;
  if (ext == ".jsonl" || ext == ".ndjson") {
    docs = parse_jsonl_documents(content, path);
  } else if (!trim(content).empty()) {
    docs.push_back(Document{path.stem().string(), "", std::move(content), {}});
  }
  if (docs.empty()) throw DataError("empty corpus: '" + path.string() + "'");
  return build_corpus(corpus_id, std::move(docs), lex);
}

}  // namespace autoq
