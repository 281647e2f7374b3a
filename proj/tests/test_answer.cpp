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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace autoq;
using namespace autoq::test;

namespace {

struct World {
  std::vector<Corpus> corpora;
  ObjectTable objects;
};

World random_world(std::mt19937_64& rng) {
  World w;
  const std::size_t total = 4 + rng() % 17;  // at most 20 sentences
  const std::size_t first = 1 + rng() % (total - 1);
  w.corpora.push_back(corpus_from("ra", {random_text(rng, first)}));
  w.corpora.push_back(corpus_from("rb", {random_text(rng, total - first)}));
  w.objects = extract_objects(std::span<const Corpus>(w.corpora), gaz());
  return w;
}

// Groups of (id) whose scores are equal within eps, in rank order.
std::vector<std::set<std::string>> tie_groups(const std::vector<std::pair<std::string, double>>& r) {
  std::vector<std::set<std::string>> out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i == 0 || std::abs(r[i].second - r[i - 1].second) > 1e-12) out.emplace_back();
    out.back().insert(r[i].first);
  }
  return out;
}

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

TEST_CASE("grant retrieval confidence") {
  const std::vector<Corpus> corpora{grant_corpus()};
  const auto objects = extract_objects(corpora[0], gaz());
  const auto index = SentenceIndex::build(corpora);
  auto qs = gen_object_queries(objects.objects);
  Query& who = qs[0];
  REQUIRE(who.surface == "Who was General Grant?");
  const auto terms = query_terms(who, objects, lex());
  CHECK(terms == std::vector<std::string>{"general", "grant"});
  // {general, grant} against {civil, general, grant, us, war}.
  const double expected = 2.0 / std::sqrt(2.0 * 5.0);
  const auto cands = answer_query(who, RetrievalContext{index, objects, lex()}, 5, 0.35);
  REQUIRE(cands.size() == 1);
  CHECK(std::abs(cands[0].confidence - expected) < 1e-9);
  CHECK(std::abs(cands[0].confidence - 0.632) < 1e-3);
  CHECK(cands[0].sent_id->str() == "grant/d0#0");
  CHECK(cands[0].matched == std::vector<std::string>{"general", "grant"});
  CHECK(who.state == QueryState::kAnswered);

  Query strict = qs[3];
  answer_query(strict, RetrievalContext{index, objects, lex()}, 5, 0.7);
  CHECK(strict.state == QueryState::kGenerated);
}

TEST_CASE("overlap confidence fuzz") {
  std::mt19937_64 rng(99);
  std::vector<std::string> vocab;
  for (int i = 0; i < 40; ++i) vocab.push_back("w" + std::to_string(i));
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<std::string> q, s;
    for (std::size_t i = rng() % 12; i > 0; --i) q.push_back(vocab[rng() % vocab.size()]);
    for (std::size_t i = rng() % 25; i > 0; --i) s.push_back(vocab[rng() % vocab.size()]);
    q = sorted_unique(q);
    s = sorted_unique(s);
    const double c = overlap_confidence(q, s);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    std::size_t common = 0;
    for (const auto& t : q) common += std::binary_search(s.begin(), s.end(), t);
    const double want =
        q.empty() || s.empty() ? 0.0 : common / std::sqrt(double(q.size()) * double(s.size()));
    CHECK(std::abs(c - want) < 1e-12);
  }
  const std::vector<std::string> same{"a", "b", "c"};
  CHECK(overlap_confidence(same, same) == doctest::Approx(1.0));
}

TEST_CASE("ranking over fixtures") {
  const auto corpora = fixture_corpora();
  const auto index = SentenceIndex::build(corpora);
  const auto vocab = index.vocabulary();
  REQUIRE(std::is_sorted(vocab.begin(), vocab.end()));
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> terms;
    for (std::size_t i = 1 + rng() % 4; i > 0; --i) terms.push_back(vocab[rng() % vocab.size()]);
    terms = sorted_unique(terms);
    const auto top = rank_sentences(terms, index, 5);
    // Brute force over every sentence.
    std::vector<double> all;
    for (std::uint32_t s = 0; s < index.size(); ++s) {
      const double c = overlap_confidence(terms, index.lemmas(s));
      if (c > 0.0) all.push_back(c);
    }
    std::sort(all.rbegin(), all.rend());
    REQUIRE(top.size() == std::min<std::size_t>(5, all.size()));
    for (std::size_t i = 0; i < top.size(); ++i) {
      CHECK(std::abs(top[i].confidence - all[i]) < 1e-12);
      CHECK(top[i].confidence <= 1.0);
    }
  }
}

TEST_CASE("co-occurrence model matches brute force") {
  std::mt19937_64 rng(2024);
  int compared_phi = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto w = random_world(rng);
    const std::size_t min_count = 1 + trial % 2;
    const auto m = CooccurrenceModel::build(w.corpora, w.objects, min_count);
    const auto o = oracle::build(w.corpora, w.objects, min_count);

    REQUIRE(m.vocabulary().size() == o.vocab.size());
    CHECK(m.sentence_count() == o.sentences);
    for (const auto* obj : o.vocab) {
      const auto& id = obj->object_id;
      CHECK(m.has_vector(id) == oracle::has_vector(o, id));
      if (!oracle::has_vector(o, id)) continue;
      for (const auto& [ctx, n] : o.counts.at(id)) {
        CHECK(m.count(id, ctx) == static_cast<std::size_t>(n));
        CHECK(std::abs(m.ppmi(id, ctx) - o.ppmi.at(id).at(ctx)) < 1e-9);
      }
    }

    std::vector<std::string> with_vec;
    for (const auto* obj : o.vocab) {
      if (oracle::has_vector(o, obj->object_id)) with_vec.push_back(obj->object_id);
    }
    for (const auto& a : with_vec) {
      for (const auto& b : with_vec) {
        const double s = similarity(a, b, m);
        CHECK(std::abs(s - oracle::similarity(o, a, b)) < 1e-9);
        CHECK(std::abs(s - similarity(b, a, m)) < 1e-12);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
      }
      const std::size_t k = 1 + rng() % 4;
      const auto got = nearest(a, m, k);
      const auto want = oracle::nearest(o, a, with_vec.size());
      REQUIRE(got.size() == std::min(k, want.size()));
      std::vector<std::pair<std::string, double>> g, full;
      for (const auto& n : got) g.push_back({n.object_id, n.score});
      for (const auto& n : want) full.push_back({n.id, n.score});
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(std::abs(got[i].score - want[i].score) < 1e-9);
      }
      // Ids agree up to exact ties, which both sides break by canonical form.
      const auto gg = tie_groups(g);
      const auto wg = tie_groups({full.begin(), full.begin() + static_cast<long>(got.size())});
      if (gg.size() == wg.size()) {
        for (std::size_t i = 0; i + 1 < gg.size(); ++i) CHECK(gg[i] == wg[i]);
      }
      for (const auto& b : with_vec) {
        if (a == b) continue;
        if (oracle::cut_is_ambiguous(o, b, k)) continue;
        CHECK(reverse_check(a, b, m, k) == oracle::reverse_check(o, a, b, k));
      }
    }

    for (const auto* obj : o.vocab) {
      CHECK(std::set<std::string>(o.incidence.at(obj->object_id).begin(),
                                  o.incidence.at(obj->object_id).end())
                .size() == m.incidence(obj->object_id).size());
      if (!(obj->quantified || obj->type == ObjectType::kConcept)) {
        CHECK_THROWS_AS(correlate(obj->object_id, m), PreconditionError);
        continue;
      }
      for (const auto& n : correlate(obj->object_id, m)) {
        CHECK(std::abs(n.score - oracle::phi_objects(o, w.corpora, obj->object_id, n.object_id)) <
              1e-9);
        CHECK(n.score >= -1.0 - 1e-12);
        CHECK(n.score <= 1.0 + 1e-12);
        ++compared_phi;
      }
    }
  }
  CHECK(compared_phi > 100);
}

TEST_CASE("phi toy table") {
  CHECK(std::abs(phi_coefficient(3, 1, 1, 5) - 14.0 / 24.0) < 1e-12);
  CHECK(std::abs(phi_coefficient(3, 1, 1, 5) - oracle::phi(3, 1, 1, 5)) < 1e-12);
  CHECK(phi_coefficient(5, 0, 0, 5) == doctest::Approx(1.0));
  CHECK(phi_coefficient(0, 5, 5, 0) == doctest::Approx(-1.0));
  CHECK(phi_coefficient(0, 0, 3, 3) == 0.0);
}

TEST_CASE("reverse check is monotone in k") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    const auto w = random_world(rng);
    const auto m = CooccurrenceModel::build(w.corpora, w.objects, 1);
    std::vector<std::string> ids;
    for (const auto& o : m.vocabulary()) {
      if (m.has_vector(o.object_id)) ids.push_back(o.object_id);
    }
    for (const auto& a : ids) {
      for (const auto& b : ids) {
        if (a == b) continue;
        bool prev = false;
        for (std::size_t k = 1; k <= ids.size(); ++k) {
          const bool now = reverse_check(a, b, m, k);
          if (prev) CHECK(now);
          prev = now;
        }
        CHECK(prev);  // everything is within reach at k = |vocab|
      }
    }
  }
}

TEST_CASE("model errors") {
  const std::vector<Corpus> corpora{grant_corpus()};
  const auto objects = extract_objects(corpora[0], gaz());
  const auto m = CooccurrenceModel::build(corpora, objects, 2);
  CHECK(m.vocabulary().empty());
  CHECK_THROWS_AS(similarity(objects.objects[0].object_id, objects.objects[1].object_id, m),
                  DataError);
  CHECK_THROWS_AS(nearest(objects.objects[0].object_id, m, 3), DataError);
  CHECK_THROWS_AS(correlate(objects.objects[1].object_id, m), DataError);

  const auto m1 = CooccurrenceModel::build(corpora, objects, 1);
  const auto& grant = objects.objects[0].object_id;
  const auto& war = objects.objects[1].object_id;
  CHECK(similarity(grant, grant, m1) == 1.0);
  auto analogies = gen_analogy_queries(objects.objects);
  const auto rec = answer_analogy(analogies[0], m1, 5, 0.35);
  REQUIRE(rec.candidates.size() == 1);
  CHECK(rec.candidates[0].object_id == war);
  REQUIRE(rec.reverse_ok.has_value());
  CHECK(*rec.reverse_ok);
  auto corr = gen_correlation_queries(objects.objects);
  REQUIRE(corr.size() == 1);
  // Only one eligible object, so nothing to correlate with.
  CHECK(answer_correlation(corr[0], m1, 5, 0.35).candidates.empty());
}
