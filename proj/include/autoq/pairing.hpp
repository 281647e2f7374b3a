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
#include <span>
#include <string>
#include <vector>

#include "autoq/ingest.hpp"
#include "autoq/lexicon.hpp"
#include "autoq/objects.hpp"
#include "autoq/pruning.hpp"
#include "autoq/querygen.hpp"

namespace autoq {

struct PairScore {
  std::string c1;  // c1 < c2
  std::string c2;
  std::size_t generated = 0;
  std::size_t useful = 0;
  double u = 0.0;
};

struct PairingInputs {
  std::span<const Corpus> corpora;
  const Lexicon& lex;
  const TypeGazetteer& gaz;
  const VerbLexicon& verbs;
  const RuleTables& rules;
  RealizationOptions opts;
};

// Pair and comparative queries over cross pairs (A in one corpus, B in the
// other, both orders), capped at `budget` by smallest query_id, rule-pruned
// and answered against the union of both corpora. Throws DataError for an
// unknown corpus id.
PairScore usefulness_score(const PairingInputs& in, const std::string& c1,
                           const std::string& c2, double theta, std::size_t budget);

// Every unordered pair of the input corpora, sorted by (c1, c2).
std::vector<PairScore> score_all_pairs(const PairingInputs& in, double theta,
                                       std::size_t budget);

// Connected components of the graph with an edge where u >= tau. Groups are
// sorted internally and by first member. Throws DataError when a pair score
// is missing.
std::vector<std::vector<std::string>> group_corpuses(
    std::span<const std::string> corpus_ids, std::span<const PairScore> scores,
    double tau);

}  // namespace autoq
