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
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autoq/common.hpp"
#include "autoq/ingest.hpp"
#include "autoq/objects.hpp"

namespace autoq {

enum class QueryState { kGenerated, kPruned, kAnswered, kNonsense };

std::string_view to_string(QueryState s);
QueryState parse_query_state(std::string_view s);

struct Query {
  std::string query_id;
  QueryKind kind = QueryKind::kObjectJournalism;
  std::optional<Interrogative> interrogative;
  std::string subject;  // object_id
  std::optional<std::string> object2;
  std::optional<std::string> verb;
  std::optional<std::string> adjective;
  std::string surface;
  QueryState state = QueryState::kGenerated;
  // Rule cell or reason recorded when state is kPruned.
  std::string prune_reason;

  // Allowed transitions: Generated -> Pruned | Answered | Nonsense.
  // Anything else throws PreconditionError.
  void mark_pruned(std::string reason);
  void mark_answered();
  void mark_nonsense();
  // Returns an Answered or Nonsense query to Generated so a later stage can
  // re-evaluate it against new evidence. Pruned queries stay pruned.
  void reopen();
};

// Hash of (kind, interrogative, subject, object2, verb, adjective).
std::uint64_t query_hash(QueryKind kind, std::optional<Interrogative> interrogative,
                         std::string_view subject, std::string_view object2,
                         std::string_view verb, std::string_view adjective);
std::string query_id_for(const Query& q);

struct VerbEntry {
  std::string lemma;
  std::string past;
  std::vector<ObjectType> subject_types;
  std::vector<ObjectType> object_types;
};

struct VerbLexicon {
  std::vector<VerbEntry> verbs;

  const VerbEntry* find(std::string_view lemma) const;
  // TSV: lemma<TAB>past<TAB>subject_types(csv)<TAB>object_types(csv)
  static VerbLexicon load(const std::filesystem::path& path);
  static VerbLexicon load_default();
};

struct ComparativeEntry {
  std::string form;
  std::vector<ObjectType> types;
  bool cross_type_allowed = false;

  // Both types allowed, and either equal or cross-type comparisons enabled.
  bool permits(ObjectType a, ObjectType b) const;
};

struct ComparativeLexicon {
  std::vector<ComparativeEntry> entries;

  const ComparativeEntry* find(std::string_view form) const;
  // TSV: form<TAB>types(csv)<TAB>cross_type(0|1)
  static ComparativeLexicon load(const std::filesystem::path& path);
  static ComparativeLexicon load_default();
};

struct RealizationOptions {
  std::string copula = "was";
};

// "is" when present-tense copulas outnumber past-tense ones in the corpora,
// otherwise "was".
std::string detect_copula(std::span<const Corpus> corpora);

std::vector<Query> gen_object_queries(std::span<const CanonicalObject> objects,
                                      const RealizationOptions& opts = {});
std::vector<Query> gen_pair_queries(std::span<const CanonicalObject> objects,
                                    const VerbLexicon& verbs);
std::vector<Query> gen_comparative_queries(
    std::span<const CanonicalObject> objects, const ComparativeLexicon& adjectives);
std::vector<Query> gen_analogy_queries(std::span<const CanonicalObject> objects);
std::vector<Query> gen_correlation_queries(std::span<const CanonicalObject> objects);

// Follow-up questions for an analogy whose top answer `answer` reached
// `confidence` >= theta. Throws PreconditionError otherwise.
std::vector<Query> gen_analogy_extensions(const Query& analogy,
                                          const CanonicalObject& subject,
                                          const CanonicalObject& answer,
                                          double confidence, double theta);

// Technique selection for bulk generation.
enum Technique : unsigned {
  kTechObject = 1u << 0,
  kTechPair = 1u << 1,
  kTechComparative = 1u << 2,
  kTechAnalogy = 1u << 3,
  kTechCorrelation = 1u << 4,
  kTechAll = 0x1f,
};

// "all" or a comma list of object,pair,comparative,analogy,correlation.
unsigned parse_techniques(std::string_view csv);

// Slot indices of a query before surface realization.
struct QuerySlots {
  QueryKind kind = QueryKind::kObjectJournalism;
  std::optional<Interrogative> interrogative;
  std::uint32_t subject = 0;
  std::optional<std::uint32_t> object2;
  std::optional<std::uint32_t> verb;
  std::optional<std::uint32_t> adjective;
};

// Enumerates queries over a fixed object list and lexicons in a
// deterministic order, hashing slots without building surface text.
class QueryEnumerator {
 public:
  QueryEnumerator(std::span<const CanonicalObject> objects, const VerbLexicon& verbs,
                  const ComparativeLexicon& adjectives, RealizationOptions opts = {});

  using Visitor = std::function<void(const QuerySlots&, std::uint64_t id)>;
  void for_each(unsigned techniques, const Visitor& visit) const;
  // Restricts pair and comparative enumeration to ordered pairs (a, b)
  // for which `allow(a, b)` holds.
  void for_each_pair(unsigned techniques,
                     const std::function<bool(std::uint32_t, std::uint32_t)>& allow,
                     const Visitor& visit) const;

  std::uint64_t hash(const QuerySlots& s) const;
  Query realize(const QuerySlots& s) const;

 private:
  std::span<const CanonicalObject> objects_;
  const VerbLexicon& verbs_;
  const ComparativeLexicon& adjectives_;
  RealizationOptions opts_;
};

struct GenerationResult {
  std::vector<Query> queries;
  std::size_t enumerated = 0;
  bool truncated = false;
};

// Generates the selected techniques. Over `max_queries`, object, analogy and
// correlation queries are kept first and pair/comparative queries fill the
// remainder by smallest query_id; if the per-object kinds alone exceed the
// cap they are cut by smallest query_id too. Output keeps generation order.
GenerationResult generate_queries(std::span<const CanonicalObject> objects,
                                  const VerbLexicon& verbs,
                                  const ComparativeLexicon& adjectives,
                                  unsigned techniques, std::size_t max_queries,
                                  const RealizationOptions& opts = {});

}  // namespace autoq
