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

#include <compare>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "autoq/lexicon.hpp"

namespace autoq {

// Identifies a sentence across a workspace. Rendered as
// "<corpus_id>/<doc_id>#<index>".
struct SentId {
  std::string corpus_id;
  std::string doc_id;
  std::size_t index = 0;

  std::string str() const;
  static SentId parse(std::string_view s);

  auto operator<=>(const SentId&) const = default;
};

struct Token {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::kOther;
  bool is_stopword = false;
  // Byte offsets into Sentence::text.
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Token range [first, last) forming a noun phrase.
struct Chunk {
  std::size_t first = 0;
  std::size_t last = 0;

  auto operator<=>(const Chunk&) const = default;
};

struct Sentence {
  SentId id;
  // Offsets of the sentence (terminator included) in Document::text.
  std::size_t begin = 0;
  std::size_t end = 0;
  // Sentence body without its terminal punctuation.
  std::string text;
  std::string terminator;
  std::vector<Token> tokens;
  std::vector<Chunk> chunks;

  std::string chunk_text(const Chunk& c) const;
  // Token surfaces joined by the original inter-token whitespace.
  std::string reconstruct() const;
};

struct Document {
  std::string doc_id;
  std::string title;
  std::string text;
  std::vector<Sentence> sentences;
};

struct Corpus {
  std::string corpus_id;
  std::vector<Document> documents;

  std::size_t sentence_count() const;
};

struct TextSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Splits on '.', '?' or '!' followed by whitespace and an uppercase letter,
// unless the word ending in '.' is a known abbreviation. Trailing whitespace
// never creates a sentence.
std::vector<TextSpan> segment_sentences(std::string_view text,
                                        const Lexicon& lex);

// Tokenizes, tags and chunks one sentence. Terminal .?! punctuation is
// split off into Sentence::terminator.
Sentence analyze_sentence(std::string_view text, const Lexicon& lex);

// Same as analyze_sentence but for a phrase lifted out of context: no
// terminator handling and no sentence-initial capitalization rule.
Sentence analyze_phrase(std::string_view text, const Lexicon& lex);

// Reduces a lowercase plural noun to its singular form.
std::string lemmatize_noun(std::string_view lower);

// Sorted, unique, lowercase lemmas of non-stopword tokens with letters or
// digits.
std::vector<std::string> content_lemmas(const Sentence& s);

// Accepts plain text (one document, doc_id = file stem) or JSONL records
// {"doc_id", "title", "text"} when the extension is .jsonl or .ndjson.
Corpus ingest_corpus(const std::filesystem::path& path,
                     const std::string& corpus_id, const Lexicon& lex);

// Segments and analyzes documents already in memory.
Corpus build_corpus(const std::string& corpus_id, std::vector<Document> docs,
                    const Lexicon& lex);

// True for ids usable as workspace file names: [A-Za-z0-9._-]+.
bool valid_corpus_id(std::string_view id);

}  // namespace autoq
