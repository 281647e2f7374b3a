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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "autoq/ingest.hpp"
#include "autoq/objects.hpp"
#include "autoq/querygen.hpp"

namespace autoq {

struct AnswerCandidate {
  // Evidence sentence for retrieval answers.
  std::optional<SentId> sent_id;
  // Answer object for analogy and correlation queries.
  std::optional<std::string> object_id;
  double confidence = 0.0;
  std::vector<std::string> matched;
};

struct AnswerRecord {
  std::string query_id;
  std::vector<AnswerCandidate> candidates;
  // Analogies: whether the subject is among the answer's own neighbors.
  std::optional<bool> reverse_ok;

  double top_confidence() const;
};

// Inverted index from content lemma to sentences.
class SentenceIndex {
 public:
  static SentenceIndex build(std::span<const Corpus> corpora);

  std::size_t size() const { return ids_.size(); }
  const SentId& sent_id(std::uint32_t s) const { return ids_[s]; }
  const std::vector<std::string>& lemmas(std::uint32_t s) const { return lemmas_[s]; }
  // Sorted sentence numbers containing `lemma`; empty if unknown.
  std::span<const std::uint32_t> postings(std::string_view lemma) const;
  // All indexed lemmas, sorted.
  std::vector<std::string> vocabulary() const;

 private:
  std::vector<SentId> ids_;
  std::vector<std::vector<std::string>> lemmas_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> postings_;
};

// |Q ∩ S| / sqrt(|Q| |S|) over sorted unique lemma sets; 0 if either is empty.
double overlap_confidence(std::span<const std::string> query_terms,
                          std::span<const std::string> sentence_terms,
                          std::vector<std::string>* matched = nullptr);

// Content lemmas of a query's slots (objects, verb, adjective).
std::vector<std::string> query_terms(const Query& q, const ObjectTable& objects,
                                     const Lexicon& lex);

// Top-k sentences by overlap confidence; ties by (doc_id, index, corpus_id).
std::vector<AnswerCandidate> rank_sentences(std::span<const std::string> terms,
                                            const SentenceIndex& index,
                                            std::size_t k);

struct RetrievalContext {
  const SentenceIndex& index;
  const ObjectTable& objects;
  const Lexicon& lex;
};

// Retrieval answer; marks the query Answered when the top candidate
// reaches theta.
std::vector<AnswerCandidate> answer_query(Query& q, const RetrievalContext& ctx,
                                          std::size_t k, double theta);

struct Neighbor {
  std::string object_id;
  double score = 0.0;
};

// PPMI-weighted object x context-lemma co-occurrence within sentences,
// plus per-object sentence incidence.
class CooccurrenceModel {
 public:
  struct Entry {
    std::uint32_t context;
    double value;
  };

  static CooccurrenceModel build(std::span<const Corpus> corpora,
                                 const ObjectTable& objects, std::size_t min_count);

  // Objects meeting min_count, sorted by canonical form.
  const std::vector<CanonicalObject>& vocabulary() const { return vocab_; }
  bool in_vocabulary(std::string_view object_id) const;
  bool has_vector(std::string_view object_id) const;
  const CanonicalObject& object(std::string_view object_id) const;

  // Sparse PPMI row sorted by context id; nullptr when the object has no
  // contexts.
  const std::vector<Entry>* vector(std::string_view object_id) const;
  double ppmi(std::string_view object_id, std::string_view context) const;
  std::size_t count(std::string_view object_id, std::string_view context) const;
  const std::vector<std::string>& contexts() const { return contexts_; }

  std::size_t sentence_count() const { return sentence_count_; }
  // Sentence numbers (corpus order) mentioning the object.
  const std::vector<std::uint32_t>& incidence(std::string_view object_id) const;

 private:
  std::size_t slot(std::string_view object_id) const;

  std::vector<CanonicalObject> vocab_;
  std::unordered_map<std::string, std::size_t> slot_;
  std::vector<std::string> contexts_;
  std::unordered_map<std::string, std::uint32_t> context_ids_;
  std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> counts_;
  std::vector<std::vector<Entry>> ppmi_;
  std::vector<double> norms_;
  std::vector<std::vector<std::uint32_t>> incidence_;
  std::size_t sentence_count_ = 0;
};

// Cosine of PPMI vectors. Throws DataError if either object has no vector.
double similarity(std::string_view a, std::string_view b, const CooccurrenceModel& m);

// Top-k most similar objects other than `a`; ties by canonical form.
std::vector<Neighbor> nearest(std::string_view a, const CooccurrenceModel& m,
                              std::size_t k);

// True iff `a` is among the k nearest neighbors of `b`.
bool reverse_check(std::string_view a, std::string_view b, const CooccurrenceModel& m,
                   std::size_t k);

double phi_coefficient(std::size_t n11, std::size_t n10, std::size_t n01,
                       std::size_t n00);

// Phi over sentence incidence against every other eligible object
// (quantified or Concept); pairs with a zero marginal are skipped.
std::vector<Neighbor> correlate(std::string_view a, const CooccurrenceModel& m);

// Analogy answer from nearest neighbors. Marks the query Answered when the
// top similarity reaches theta and records the reverse check.
AnswerRecord answer_analogy(Query& q, const CooccurrenceModel& m, std::size_t k,
                            double theta);

// Correlation answer; candidate confidence is max(0, phi).
AnswerRecord answer_correlation(Query& q, const CooccurrenceModel& m, std::size_t k,
                                double theta);

}  // namespace autoq
