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

#include <doctest.h>

#include <fstream>

#include "fixtures.hpp"

using namespace autoq;
using namespace autoq::test;

namespace {

std::vector<std::string> pieces(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& s : segment_sentences(text, lex())) {
    out.emplace_back(text.substr(s.begin, s.end - s.begin));
  }
  return out;
}

void write(const std::filesystem::path& p, const std::string& content) {
  std::ofstream(p, std::ios::binary) << content;
}

}  // namespace

TEST_CASE("segmentation") {
  CHECK(pieces("One here. Two there! Three?") ==
        std::vector<std::string>{"One here.", "Two there!", "Three?"});
  CHECK(pieces("Dr. Smith arrived. He left.").size() == 2);
  CHECK(pieces("The U.S. Army marched. It rained.").size() == 2);
  // No uppercase after the period.
  CHECK(pieces("It cost 3.5 dollars. then more.").size() == 1);
  CHECK(pieces("Trailing space.   \n").size() == 1);
  CHECK(pieces("").empty());
}

TEST_CASE("grant sentence analysis") {
  const auto c = grant_corpus();
  REQUIRE(c.sentence_count() == 1);
  const auto& s = c.documents[0].sentences[0];
  CHECK(s.id.str() == "grant/d0#0");
  CHECK(s.terminator == ".");
  std::vector<std::string> surf;
  for (const auto& t : s.tokens) surf.push_back(t.surface);
  CHECK(surf == std::vector<std::string>{"General", "Grant", "was", "in", "the", "US",
                                         "Civil", "War"});
  CHECK(content_lemmas(s) ==
        std::vector<std::string>{"civil", "general", "grant", "us", "war"});
  CHECK(s.reconstruct() == s.text);
  for (const auto& t : s.tokens) CHECK(s.text.substr(t.begin, t.end - t.begin) == t.surface);
}

TEST_CASE("reconstruct keeps spacing") {
  const auto c = corpus_from("x", {"The  old\tmill, by the river, burned."});
  const auto& s = c.documents[0].sentences[0];
  CHECK(s.reconstruct() == "The  old\tmill, by the river, burned");
}

TEST_CASE("plural lemmas") {
  CHECK(lemmatize_noun("wars") == "war");
  CHECK(lemmatize_noun("cities") == "city");
  CHECK(lemmatize_noun("boxes") == "box");
  CHECK(lemmatize_noun("glass") == "glass");
  for (std::string w : {"wars", "cities", "boxes", "churches", "war", "news", "bus"}) {
    const auto once = lemmatize_noun(w);
    CHECK(lemmatize_noun(once) == once);
  }
}

TEST_CASE("sentence ids") {
  SentId id{"oil", "doc-1", 12};
  CHECK(SentId::parse(id.str()) == id);
  CHECK_THROWS_AS(SentId::parse("oil#1"), DataError);
  CHECK_THROWS_AS(SentId::parse("oil/d#x"), DataError);
  CHECK_THROWS_AS(SentId::parse("oil/d#"), DataError);
}

TEST_CASE("corpus errors") {
  CHECK_THROWS_AS(build_corpus("a b", {Document{"d", "", "Text.", {}}}, lex()), DataError);
  CHECK_THROWS_AS(build_corpus("a", {}, lex()), DataError);
  CHECK_THROWS_AS(
      build_corpus("a", {Document{"d", "", "One.", {}}, Document{"d", "", "Two.", {}}}, lex()),
      DataError);
  CHECK_THROWS_AS(build_corpus("a", {Document{"d", "", "   ", {}}}, lex()), DataError);
  CHECK(valid_corpus_id("civil_war-1.2"));
  CHECK_FALSE(valid_corpus_id("../x"));
}

TEST_CASE("file ingestion") {
  TempDir dir;
  const auto txt = dir.path() / "notes.txt";
  write(txt, "General Grant was in the US Civil War. He won.");
  const auto c = ingest_corpus(txt, "notes", lex());
  REQUIRE(c.documents.size() == 1);
  CHECK(c.documents[0].doc_id == "notes");
  CHECK(c.sentence_count() == 2);

  const auto jl = dir.path() / "docs.jsonl";
  write(jl, "{\"doc_id\":\"a\",\"title\":\"A\",\"text\":\"First doc.\"}\n\n"
            "{\"doc_id\":\"b\",\"text\":\"Second doc. More here.\"}\n");
  const auto j = ingest_corpus(jl, "docs", lex());
  CHECK(j.documents.size() == 2);
  CHECK(j.documents[0].title == "A");
  CHECK(j.sentence_count() == 3);

  write(jl, "{\"doc_id\":\"a\",\"text\":\"ok.\"}\n{broken\n");
  try {
    ingest_corpus(jl, "docs", lex());
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("docs.jsonl:2") != std::string::npos);
  }
  write(jl, "{\"title\":\"x\",\"text\":\"ok.\"}\n");
  CHECK_THROWS_AS(ingest_corpus(jl, "docs", lex()), DataError);
  write(jl, "{\"doc_id\":\"a\",\"text\":5}\n");
  CHECK_THROWS_AS(ingest_corpus(jl, "docs", lex()), DataError);
  write(txt, "  \n");
  CHECK_THROWS_AS(ingest_corpus(txt, "notes", lex()), DataError);
  CHECK_THROWS_AS(ingest_corpus(dir.path() / "missing.txt", "m", lex()), DataError);
}

TEST_CASE("fixture corpora size") {
  std::size_t n = 0;
  for (const auto& c : fixture_corpora()) n += c.sentence_count();
  CHECK(n <= 200);
  CHECK(n >= 100);
}
