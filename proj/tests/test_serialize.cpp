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
#include "autoq/serialize.hpp"
#include "autoq/workspace.hpp"

using namespace autoq;
using namespace autoq::test;

namespace {

void write(const std::filesystem::path& p, const std::string& s) {
  std::ofstream(p, std::ios::binary) << s;
}

}  // namespace

TEST_CASE("objects and corpora round trip") {
  TempDir dir;
  const auto corpora = fixture_corpora();
  const auto table = extract_objects(std::span<const Corpus>(corpora), gaz());
  write_objects(dir.path(), table);
  const auto back = read_objects(dir.path());
  REQUIRE(back.objects.size() == table.objects.size());
  REQUIRE(back.mentions.size() == table.mentions.size());
  for (std::size_t i = 0; i < table.objects.size(); ++i) {
    CHECK(dump(to_json(back.objects[i])) == dump(to_json(table.objects[i])));
  }
  CHECK(back.mentions[5].sent_id == table.mentions[5].sent_id);
  CHECK(back.mentions[5].chunk == table.mentions[5].chunk);
  CHECK(&back.at(table.objects[0].object_id) == &back.objects[0]);

  const auto p = dir.path() / "oil.jsonl";
  write_corpus(p, corpora[1]);
  const auto c = read_corpus(p, lex());
  CHECK(c.corpus_id == "oil");
  CHECK(c.sentence_count() == corpora[1].sentence_count());
  CHECK(c.documents[0].title == corpora[1].documents[0].title);
}

TEST_CASE("queries, answers and labels round trip") {
  TempDir dir;
  const auto table = extract_objects(grant_corpus(), gaz());
  auto qs = gen_object_queries(table.objects);
  auto pairs = gen_pair_queries(table.objects, verbs());
  qs.insert(qs.end(), pairs.begin(), pairs.begin() + 4);
  qs[1].mark_pruned("interrogative_type:What/Person");
  write_queries(dir.path() / "q.jsonl", qs);
  const auto back = read_queries(dir.path() / "q.jsonl");
  REQUIRE(back.size() == qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) CHECK(dump(to_json(back[i])) == dump(to_json(qs[i])));

  std::vector<AnswerRecord> answers(2);
  answers[0].query_id = "a";
  answers[0].candidates.push_back({SentId{"grant", "d0", 0}, {}, 0.6324555320336759, {"grant"}});
  answers[1].query_id = "b";
  answers[1].candidates.push_back({{}, std::string("0b69fe0f39551017"), 0.1 + 0.2, {}});
  answers[1].reverse_ok = false;
  write_answers(dir.path() / "a.jsonl", answers);
  const auto ab = read_answers(dir.path() / "a.jsonl");
  REQUIRE(ab.size() == 2);
  CHECK(ab[0].candidates[0].confidence == 0.6324555320336759);
  CHECK(ab[1].candidates[0].confidence == 0.1 + 0.2);  // round-trip exact
  CHECK(ab[1].reverse_ok == false);
  CHECK_FALSE(ab[0].reverse_ok.has_value());
  CHECK(*ab[1].candidates[0].object_id == "0b69fe0f39551017");

  const auto lp = dir.path() / "labels.jsonl";
  CHECK(read_labels(lp).empty());
  append_label(lp, Label{"q1", Category::kNonsensical, std::nullopt, "ann", 1});
  append_label(lp, Label{"q2", Category::kUsefulInteresting, true, "bob", 2});
  const auto labels = read_labels(lp);
  REQUIRE(labels.size() == 2);
  CHECK_FALSE(labels[0].answer_correct.has_value());
  CHECK(labels[1].answer_correct == true);
  CHECK(labels[1].reviewer == "bob");

  Sample s{{"x", "y"}, true, 42, true};
  const auto sb = sample_from_json(to_json(s));
  CHECK(sb.query_ids == s.query_ids);
  CHECK(sb.seed == 42);
  CHECK(sb.truncated);
}

TEST_CASE("version and parse errors") {
  TempDir dir;
  const auto p = dir.path() / "q.jsonl";
  write(p, "{\"version\":2,\"query_id\":\"x\"}\n");
  CHECK_THROWS_AS(read_queries(p), DataError);
  write(p, "{\"query_id\":\"x\"}\n");
  CHECK_THROWS_AS(read_queries(p), DataError);
  write(p, "\n{not json\n");
  try {
    read_labels(p);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  CHECK_THROWS_AS(check_version(Json{{"version", "1"}}), DataError);
  CHECK_NOTHROW(check_version(Json{{"version", 1}}));
}

TEST_CASE("label csv import") {
  TempDir dir;
  const auto p = dir.path() / "l.csv";
  write(p, "query_id,category,answer_correct,reviewer,ts\n"
           "q1,UsefulInteresting,yes,ann,3\n"
           "\"q2\",Nonsensical,,\"o'neil, k\",\n"
           "q3,UsefulNotInteresting,0,ann,5\n");
  const auto l = import_labels_csv(p);
  REQUIRE(l.size() == 3);
  CHECK(l[0].answer_correct == true);
  CHECK(l[0].ts == 3);
  CHECK(l[1].reviewer == "o'neil, k");
  CHECK_FALSE(l[1].answer_correct.has_value());
  CHECK(l[2].answer_correct == false);

  write(p, "query_id,category\nq1,UsefulInteresting\n");
  CHECK_THROWS_AS(import_labels_csv(p), DataError);
  write(p, "query_id,category,reviewer\nq1,Great,ann\n");
  CHECK_THROWS_AS(import_labels_csv(p), DataError);
  write(p, "query_id,category,reviewer,answer_correct\nq1,Nonsensical,ann,perhaps\n");
  CHECK_THROWS_AS(import_labels_csv(p), DataError);
}

TEST_CASE("reports") {
  PairScore s{"a", "b", 10, 3, 0.3};
  const std::vector<PairScore> v{s};
  const auto tsv = pair_scores_tsv(v);
  CHECK(tsv.rfind("# version 1\n", 0) == 0);
  CHECK(tsv.find("a\tb\t10\t3\t0.3") != std::string::npos);
  const auto g = groups_json({{"a", "b"}, {"c"}});
  CHECK(g["version"] == 1);
  CHECK(dump(g).back() == '\n');
  CHECK(to_json(wilson_interval(20, 15))["version"] == 1);
}

TEST_CASE("config") {
  TempDir dir;
  const auto p = dir.path() / "autoq.conf";
  write(p, "# comment\ntheta = 0.5\ntopk=3\nverbs = my_verbs.tsv\n\n");
  const auto c = Config::load(p);
  CHECK(c.theta == 0.5);
  CHECK(c.topk == 3);
  CHECK(c.tau == 0.2);
  CHECK(c.lexicons.at("verbs") == dir.path() / "my_verbs.tsv");
  write(p, "theta=1.5\n");
  CHECK_THROWS_AS(Config::load(p), DataError);
  write(p, "colour=blue\n");
  CHECK_THROWS_AS(Config::load(p), DataError);
  write(p, "topk=-1\n");
  CHECK_THROWS_AS(Config::load(p), DataError);
  write(p, "theta\n");
  CHECK_THROWS_AS(Config::load(p), DataError);
}

TEST_CASE("workspace layout") {
  TempDir dir;
  const auto ws = Workspace::open(dir.path() / "ws");
  for (const char* d : {"corpora", "objects", "queries", "answers", "labels", "reports"}) {
    CHECK(std::filesystem::is_directory(ws.root() / d));
  }
  for (const char* name : kLexiconNames) {
    CHECK(std::filesystem::exists(ws.lexicons_dir() / (std::string(name) + ".tsv")));
  }
  Config cfg;
  const auto res = ws.load_resources(cfg);
  CHECK(res.rules.interrogative.prune_count() == 8);
  CHECK(ws.corpus_ids().empty());
  cfg.lexicons["verbs"] = dir.path() / "missing.tsv";
  CHECK_THROWS_AS(ws.load_resources(cfg), DataError);
}
