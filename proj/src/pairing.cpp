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

#include "autoq/pairing.hpp"

#include <algorithm>
#include <map>

#include "autoq/answer.hpp"
#include "autoq/union_find.hpp"

namespace autoq {

namespace {

const Corpus& find_corpus(std::span<const Corpus> corpora, const std::string& id) {
  for (const auto& c : corpora) {
    if (c.corpus_id == id) return c;
  }
  throw DataError("unknown corpus '" + id + "'");
}

}  // namespace

PairScore usefulness_score(const PairingInputs& in, const std::string& c1,
                           const std::string& c2, double theta, std::size_t budget) {
  if (budget == 0) throw PreconditionError("budget must be at least 1");
  if (c1 == c2) throw PreconditionError("cannot pair corpus '" + c1 + "' with itself");
  PairScore score;
  score.c1 = std::min(c1, c2);
  score.c2 = std::max(c1, c2);
  const std::vector<Corpus> pair = {find_corpus(in.corpora, score.c1),
                                    find_corpus(in.corpora, score.c2)};

  const ObjectTable table = extract_objects(std::span<const Corpus>(pair), in.gaz);
  std::vector<char> in_a(table.objects.size(), 0), in_b(table.objects.size(), 0);
  for (const auto& m : table.mentions) {
    (m.sent_id.corpus_id == score.c1 ? in_a : in_b)[m.object_index] = 1;
  }

  QueryEnumerator en(table.objects, in.verbs, in.rules.adjectives, in.opts);
  std::vector<std::pair<std::uint64_t, QuerySlots>> slots;
  en.for_each_pair(
      kTechPair | kTechComparative,
      [&](std::uint32_t x, std::uint32_t y) {
        return (in_a[x] && in_b[y]) || (in_b[x] && in_a[y]);
      },
      [&](const QuerySlots& s, std::uint64_t id) { slots.emplace_back(id, s); });
  auto by_id = [](const auto& x, const auto& y) { return x.first < y.first; };
  if (slots.size() > budget) {
    std::nth_element(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(budget),
                     slots.end(), by_id);
    slots.resize(budget);
  }
  std::sort(slots.begin(), slots.end(), by_id);

  std::vector<Query> queries;
  queries.reserve(slots.size());
  for (const auto& [_, s] : slots) queries.push_back(en.realize(s));
  score.generated = queries.size();
  if (queries.empty()) return score;

  apply_rule_pruning(queries, table, in.rules);
  const SentenceIndex index = SentenceIndex::build(pair);
  const RetrievalContext ctx{index, table, in.lex};
  for (auto& q : queries) {
    if (q.state == QueryState::kPruned) continue;
    const auto candidates = answer_query(q, ctx, 1, theta);
    if (!candidates.empty() && candidates.front().confidence >= theta) ++score.useful;
  }
  score.u = static_cast<double>(score.useful) / static_cast<double>(score.generated);
  return score;
}

std::vector<PairScore> score_all_pairs(const PairingInputs& in, double theta,
                                       std::size_t budget) {
  std::vector<std::string> ids;
  for (const auto& c : in.corpora) ids.push_back(c.corpus_id);
  std::sort(ids.begin(), ids.end());
  std::vector<PairScore> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      out.push_back(usefulness_score(in, ids[i], ids[j], theta, budget));
    }
  }
  return out;
}

std::vector<std::vector<std::string>> group_corpuses(
    std::span<const std::string> corpus_ids, std::span<const PairScore> scores,
    double tau) {
  std::vector<std::string> ids(corpus_ids.begin(), corpus_ids.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::map<std::pair<std::string, std::string>, double> u;
  for (const auto& s : scores) {
    u[{std::min(s.c1, s.c2), std::max(s.c1, s.c2)}] = s.u;
  }
  UnionFind uf(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      auto it = u.find({ids[i], ids[j]});
      if (it == u.end()) {
        throw DataError("missing pair score for " + ids[i] + " and " + ids[j]);
      }
      if (it->second >= tau) uf.unite(i, j);
    }
  }
  std::map<std::size_t, std::vector<std::string>> by_root;
  for (std::size_t i = 0; i < ids.size(); ++i) by_root[uf.find(i)].push_back(ids[i]);
  std::vector<std::vector<std::string>> groups;
  for (auto& [_, g] : by_root) groups.push_back(std::move(g));
  std::sort(groups.begin(), groups.end());
  return groups;
}

}  // namespace autoq
