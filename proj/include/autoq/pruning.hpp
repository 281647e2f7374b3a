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

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autoq/answer.hpp"
#include "autoq/objects.hpp"
#include "autoq/querygen.hpp"

namespace autoq {

struct PruneDecision {
  bool keep = true;
  std::string rule;  // identifies the table cell or check that decided

  static PruneDecision Keep(std::string rule = {}) { return {true, std::move(rule)}; }
  static PruneDecision Prune(std::string rule) { return {false, std::move(rule)}; }
};

// Interrogative x object type keep/prune table (24 cells).
class PruneRuleTable {
 public:
  // All cells keep.
  PruneRuleTable();

  // Who x {Object, Location, Concept}, What x Person,
  // Why x {Person, Object, Location} and Where x Concept prune.
  static PruneRuleTable default_table();
  // TSV interrogative<TAB>type<TAB>keep|prune; exactly one row per cell.
  static PruneRuleTable load(const std::filesystem::path& path);

  bool keeps(Interrogative i, ObjectType t) const;
  void set(Interrogative i, ObjectType t, bool keep);
  std::size_t prune_count() const;

 private:
  std::array<std::array<bool, 4>, 6> keep_;
};

// Per-verb subject x object type grid shared by Why and How pair queries.
class VerbFrameTable {
 public:
  // TSV verb<TAB>subject_type<TAB>object_type<TAB>keep|prune, 16 rows per verb.
  static VerbFrameTable load(const std::filesystem::path& path);
  // Keeps exactly the type pairs the lexicon lists for each verb.
  static VerbFrameTable from_lexicon(const VerbLexicon& verbs);

  bool has_verb(std::string_view lemma) const;
  // Throws DataError if the verb has no frame.
  bool keeps(std::string_view lemma, ObjectType subject, ObjectType object) const;
  void set(const std::string& lemma, ObjectType subject, ObjectType object, bool keep);
  // Throws DataError naming the first lexicon verb without a frame.
  void require_covers(const VerbLexicon& verbs) const;
  std::size_t verb_count() const { return frames_.size(); }

 private:
  using Grid = std::array<std::array<bool, 4>, 4>;
  std::map<std::string, Grid, std::less<>> frames_;
};

struct HistoryEntry {
  std::int64_t ts = 0;
  bool nonsense = false;
  double max_conf = 0.0;
};

// Per-query record of confidence-based nonsense classifications.
class NonsenseHistory {
 public:
  // Throws PreconditionError unless ts is later than the query's last entry.
  void record(const std::string& query_id, std::int64_t ts, bool nonsense,
              double max_conf);

  const std::map<std::string, std::vector<HistoryEntry>>& entries() const {
    return entries_;
  }
  std::int64_t last_ts() const { return last_ts_; }

  // JSONL {"query_id", "ts", "class", "max_conf"}; a missing file is empty.
  static NonsenseHistory load(const std::filesystem::path& path);

 private:
  std::map<std::string, std::vector<HistoryEntry>> entries_;
  std::int64_t last_ts_ = 0;
};

struct HistoryRecord {
  std::string query_id;
  HistoryEntry entry;
};

void append_history(const std::filesystem::path& path,
                    std::span<const HistoryRecord> records);

// Object-journalism queries only.
PruneDecision prune_interrogative_type(const Query& q, const ObjectTable& objects,
                                       const PruneRuleTable& table);

// Pair-journalism queries. When/Where templates always keep.
PruneDecision prune_pair_frame(const Query& q, const ObjectTable& objects,
                               const VerbFrameTable& frames);

// Comparative queries: re-checks the adjective's type constraint.
PruneDecision prune_comparative(const Query& q, const ObjectTable& objects,
                                const ComparativeLexicon& adjectives);

// Marks the query Nonsense when no candidate reaches theta (Answered
// otherwise) and records the classification under `ts`. Throws
// PreconditionError for pruned queries or theta outside [0, 1].
PruneDecision prune_by_confidence(Query& q, std::span<const AnswerCandidate> candidates,
                                  double theta, NonsenseHistory& history,
                                  std::int64_t ts);

// Fraction of ever-nonsense queries that later flipped to non-nonsense.
double nonsense_reclassification_rate(const NonsenseHistory& history);

struct RuleTables {
  PruneRuleTable interrogative;
  VerbFrameTable frames;
  ComparativeLexicon adjectives;
};

// Applies every rule table to Generated queries; returns the number pruned.
std::size_t apply_rule_pruning(std::vector<Query>& queries, const ObjectTable& objects,
                               const RuleTables& tables);

}  // namespace autoq
