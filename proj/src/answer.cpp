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

#include "autoq/answer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace autoq {

double AnswerRecord::top_confidence() const {
  double best = 0.0;
  for (const auto& c : candidates) best = std::max(best, c.confidence);
  return best;
}

SentenceIndex SentenceIndex::build(std::span<const Corpus> corpora) {
  SentenceIndex idx;
  for (const auto& corpus : corpora) {
    for (const auto& doc : corpus.documents) {
      for (const auto& s : doc.sentences) {
        const auto n = static_cast<std::uint32_t>(idx.ids_.size());
        idx.ids_.push_back(s.id);
        idx.lemmas_.push_back(content_lemmas(s));
        for (const auto& l : idx.lemmas_.back()) idx.postings_[l].push_back(n);
      }
    }
  }
  return idx;
}

std::span<const std::uint32_t> SentenceIndex::postings(std::string_view lemma) const {
  auto it = postings_.find(std::string(lemma));
  if (it == postings_.end()) return {};
  return it->second;
}

std::vector<std::string> SentenceIndex::vocabulary() const {
  std::vector<std::string> out;
  out.reserve(postings_.size());
  for (const auto& [l, _] : postings_) out.push_back(l);
  std::sort(out.begin(), out.end());
  return out;
}

double overlap_confidence(std::span<const std::string> query_terms,
                          std::span<const std::string> sentence_terms,
                          std::vector<std::string>* matched) {
  if (query_terms.empty() || sentence_terms.empty()) return 0.0;
  std::size_t common = 0;
  auto q = query_terms.begin();
  auto s = sentence_terms.begin();
  while (q != query_terms.end() && s != sentence_terms.end()) {
    if (*q < *s) {
      ++q;
    } else if (*s < *q) {
      ++s;
    } else {
      if (matched) matched->push_back(*q);
      ++common;
      ++q;
      ++s;
    }
  }
  return static_cast<double>(common) /
         std::sqrt(static_cast<double>(query_terms.size()) *
                   static_cast<double>(sentence_terms.size()));
}

std::vector<std::string> query_terms(const Query& q, const ObjectTable& objects,
                                     const Lexicon& lex) {
  std::set<std::string> terms;
  auto add_object = [&](const std::string& id) {
    const auto& o = objects.at(id);
    for (auto& l : content_lemmas(analyze_phrase(o.canonical, lex))) {
      terms.insert(std::move(l));
    }
  };
  auto add_word = [&](const std::string& w) {
    auto lower = to_lower(w);
    if (has_alnum(lower) && !lex.is_stopword(lower)) terms.insert(lower);
  };
  add_object(q.subject);
  if (q.object2) add_object(*q.object2);
  if (q.verb) add_word(*q.verb);
  if (q.adjective) add_word(*q.adjective);
  return {terms.begin(), terms.end()};
}

std::vector<AnswerCandidate> rank_sentences(std::span<const std::string> terms,
                                            const SentenceIndex& index,
                                            std::size_t k) {
  std::vector<std::uint32_t> hits;
  for (const auto& t : terms) {
    auto p = index.postings(t);
    hits.insert(hits.end(), p.begin(), p.end());
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());

  struct Scored {
    std::uint32_t sent;
    double confidence;
  };
  std::vector<Scored> scored;
  scored.reserve(hits.size());
  for (auto s : hits) {
    scored.push_back({s, overlap_confidence(terms, index.lemmas(s))});
  }
  auto better = [&](const Scored& x, const Scored& y) {
    if (x.confidence != y.confidence) return x.confidence > y.confidence;
    const auto& a = index.sent_id(x.sent);
    const auto& b = index.sent_id(y.sent);
    if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
    if (a.index != b.index) return a.index < b.index;
    return a.corpus_id < b.corpus_id;
  };
  const std::size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take),
                    scored.end(), better);
  std::vector<AnswerCandidate> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    AnswerCandidate c;
    c.sent_id = index.sent_id(scored[i].sent);
    c.confidence = overlap_confidence(terms, index.lemmas(scored[i].sent), &c.matched);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<AnswerCandidate> answer_query(Query& q, const RetrievalContext& ctx,
                                          std::size_t k, double theta) {
  auto terms = query_terms(q, ctx.objects, ctx.lex);
  auto candidates = rank_sentences(terms, ctx.index, k);
  if (!candidates.empty() && candidates.front().confidence >= theta &&
      q.state == QueryState::kGenerated) {
    q.mark_answered();
  }
  return candidates;
}

CooccurrenceModel CooccurrenceModel::build(std::span<const Corpus> corpora,
                                           const ObjectTable& objects,
                                           std::size_t min_count) {
  CooccurrenceModel m;
  std::vector<std::size_t> table_to_slot(objects.objects.size(), SIZE_MAX);
  for (std::size_t i = 0; i < objects.objects.size(); ++i) {
    const auto& o = objects.objects[i];
    if (o.mention_count < min_count) continue;
    table_to_slot[i] = m.vocab_.size();
    m.slot_[o.object_id] = m.vocab_.size();
    m.vocab_.push_back(o);
  }

  std::map<SentId, std::vector<const ObjectMention*>> by_sentence;
  for (const auto& mention : objects.mentions) {
    if (table_to_slot[mention.object_index] != SIZE_MAX) {
      by_sentence[mention.sent_id].push_back(&mention);
    }
  }

  std::vector<std::map<std::string, std::size_t>> raw(m.vocab_.size());
  m.incidence_.assign(m.vocab_.size(), {});
  std::uint32_t sent_no = 0;
  for (const auto& corpus : corpora) {
    for (const auto& doc : corpus.documents) {
      for (const auto& s : doc.sentences) {
        const std::uint32_t n = sent_no++;
        auto it = by_sentence.find(s.id);
        if (it == by_sentence.end()) continue;
        for (const ObjectMention* mention : it->second) {
          const std::size_t slot = table_to_slot[mention->object_index];
          auto& inc = m.incidence_[slot];
          if (inc.empty() || inc.back() != n) inc.push_back(n);
          for (std::size_t t = 0; t < s.tokens.size(); ++t) {
            if (t >= mention->chunk.first && t < mention->chunk.last) continue;
            const Token& tok = s.tokens[t];
            if (tok.is_stopword || !has_alnum(tok.surface)) continue;
            ++raw[slot][to_lower(tok.lemma)];
          }
        }
      }
    }
  }
  m.sentence_count_ = sent_no;

  std::set<std::string> ctx_set;
  for (const auto& row : raw) {
    for (const auto& [c, _] : row) ctx_set.insert(c);
  }
  m.contexts_.assign(ctx_set.begin(), ctx_set.end());
  for (std::uint32_t i = 0; i < m.contexts_.size(); ++i) m.context_ids_[m.contexts_[i]] = i;

  m.counts_.assign(m.vocab_.size(), {});
  std::vector<double> row_sum(m.vocab_.size(), 0.0);
  std::vector<double> col_sum(m.contexts_.size(), 0.0);
  double total = 0.0;
  for (std::size_t o = 0; o < raw.size(); ++o) {
    for (const auto& [c, n] : raw[o]) {
      const auto cid = m.context_ids_[c];
      m.counts_[o].push_back({cid, n});
      row_sum[o] += static_cast<double>(n);
      col_sum[cid] += static_cast<double>(n);
      total += static_cast<double>(n);
    }
  }

  m.ppmi_.assign(m.vocab_.size(), {});
  m.norms_.assign(m.vocab_.size(), 0.0);
  for (std::size_t o = 0; o < m.counts_.size(); ++o) {
    double sq = 0.0;
    for (const auto& [cid, n] : m.counts_[o]) {
      const double pmi = std::log(static_cast<double>(n) * total /
                                  (row_sum[o] * col_sum[cid]));
      if (pmi > 0.0) {
        m.ppmi_[o].push_back({cid, pmi});
        sq += pmi * pmi;
      }
    }
    m.norms_[o] = std::sqrt(sq);
  }
  return m;
}

std::size_t CooccurrenceModel::slot(std::string_view object_id) const {
  auto it = slot_.find(std::string(object_id));
  if (it == slot_.end()) {
    throw DataError("object '" + std::string(object_id) + "' absent from model");
  }
  return it->second;
}

bool CooccurrenceModel::in_vocabulary(std::string_view object_id) const {
  return slot_.count(std::string(object_id)) > 0;
}

bool CooccurrenceModel::has_vector(std::string_view object_id) const {
  auto it = slot_.find(std::string(object_id));
  return it != slot_.end() && !counts_[it->second].empty();
}

const CanonicalObject& CooccurrenceModel::object(std::string_view object_id) const {
  return vocab_[slot(object_id)];
}

const std::vector<CooccurrenceModel::Entry>* CooccurrenceModel::vector(
    std::string_view object_id) const {
  auto it = slot_.find(std::string(object_id));
  if (it == slot_.end() || counts_[it->second].empty()) return nullptr;
  return &ppmi_[it->second];
}

double CooccurrenceModel::ppmi(std::string_view object_id,
                               std::string_view context) const {
  const auto* v = vector(object_id);
  auto cit = context_ids_.find(std::string(context));
  if (!v || cit == context_ids_.end()) return 0.0;
  for (const auto& e : *v) {
    if (e.context == cit->second) return e.value;
  }
  return 0.0;
}

std::size_t CooccurrenceModel::count(std::string_view object_id,
                                     std::string_view context) const {
  auto it = slot_.find(std::string(object_id));
  auto cit = context_ids_.find(std::string(context));
  if (it == slot_.end() || cit == context_ids_.end()) return 0;
  for (const auto& [cid, n] : counts_[it->second]) {
    if (cid == cit->second) return n;
  }
  return 0;
}

const std::vector<std::uint32_t>& CooccurrenceModel::incidence(
    std::string_view object_id) const {
  return incidence_[slot(object_id)];
}

double similarity(std::string_view a, std::string_view b, const CooccurrenceModel& m) {
  const auto* va = m.vector(a);
  const auto* vb = m.vector(b);
  if (!va) throw DataError("object '" + std::string(a) + "' has no vector");
  if (!vb) throw DataError("object '" + std::string(b) + "' has no vector");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& e : *va) na += e.value * e.value;
  for (const auto& e : *vb) nb += e.value * e.value;
  if (na == 0.0 || nb == 0.0) return 0.0;
  if (a == b) return 1.0;
  auto i = va->begin();
  auto j = vb->begin();
  while (i != va->end() && j != vb->end()) {
    if (i->context < j->context) {
      ++i;
    } else if (j->context < i->context) {
      ++j;
    } else {
      dot += i->value * j->value;
      ++i;
      ++j;
    }
  }
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

std::vector<Neighbor> nearest(std::string_view a, const CooccurrenceModel& m,
                              std::size_t k) {
  if (!m.vector(a)) {
    throw DataError("object '" + std::string(a) + "' absent from model");
  }
  struct Ranked {
    const CanonicalObject* obj;
    double score;
  };
  std::vector<Ranked> ranked;
  for (const auto& o : m.vocabulary()) {
    if (o.object_id == a || !m.vector(o.object_id)) continue;
    ranked.push_back({&o, similarity(a, o.object_id, m)});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& x, const Ranked& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.obj->canonical < y.obj->canonical;
  });
  if (ranked.size() > k) ranked.resize(k);
  std::vector<Neighbor> out;
  out.reserve(ranked.size());
  for (const auto& r : ranked) out.push_back({r.obj->object_id, r.score});
  return out;
}

bool reverse_check(std::string_view a, std::string_view b, const CooccurrenceModel& m,
                   std::size_t k) {
  for (const auto& n : nearest(b, m, k)) {
    if (n.object_id == a) return true;
  }
  return false;
}

double phi_coefficient(std::size_t n11, std::size_t n10, std::size_t n01,
                       std::size_t n00) {
  const double a = static_cast<double>(n11), b = static_cast<double>(n10);
  const double c = static_cast<double>(n01), d = static_cast<double>(n00);
  const double denom = (a + b) * (c + d) * (a + c) * (b + d);
  if (denom == 0.0) return 0.0;
  return (a * d - b * c) / std::sqrt(denom);
}

namespace {

bool eligible(const CanonicalObject& o) {
  return o.quantified || o.type == ObjectType::kConcept;
}

std::size_t intersection_size(const std::vector<std::uint32_t>& x,
                              const std::vector<std::uint32_t>& y) {
  std::size_t n = 0;
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

}  // namespace

std::vector<Neighbor> correlate(std::string_view a, const CooccurrenceModel& m) {
  const auto& obj = m.object(a);
  if (!eligible(obj)) {
    throw PreconditionError("object '" + obj.canonical +
                            "' is neither quantified nor a Concept");
  }
  const auto& ia = m.incidence(a);
  const std::size_t n = m.sentence_count();
  struct Ranked {
    const CanonicalObject* obj;
    double phi;
  };
  std::vector<Ranked> ranked;
  for (const auto& o : m.vocabulary()) {
    if (o.object_id == a || !eligible(o)) continue;
    const auto& ib = m.incidence(o.object_id);
    const std::size_t n11 = intersection_size(ia, ib);
    const std::size_t n10 = ia.size() - n11;
    const std::size_t n01 = ib.size() - n11;
    const std::size_t n00 = n - n11 - n10 - n01;
    if (n11 + n10 == 0 || n01 + n00 == 0 || n11 + n01 == 0 || n10 + n00 == 0) continue;
    ranked.push_back({&o, phi_coefficient(n11, n10, n01, n00)});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& x, const Ranked& y) {
    if (x.phi != y.phi) return x.phi > y.phi;
    return x.obj->canonical < y.obj->canonical;
  });
  std::vector<Neighbor> out;
  out.reserve(ranked.size());
  for (const auto& r : ranked) out.push_back({r.obj->object_id, r.phi});
  return out;
}

AnswerRecord answer_analogy(Query& q, const CooccurrenceModel& m, std::size_t k,
                            double theta) {
  AnswerRecord rec;
  rec.query_id = q.query_id;
  if (!m.vector(q.subject)) return rec;
  for (auto& n : nearest(q.subject, m, k)) {
    AnswerCandidate c;
    c.object_id = std::move(n.object_id);
    c.confidence = n.score;
    rec.candidates.push_back(std::move(c));
  }
  if (!rec.candidates.empty()) {
    rec.reverse_ok = reverse_check(q.subject, *rec.candidates.front().object_id, m, k);
    if (rec.candidates.front().confidence >= theta &&
        q.state == QueryState::kGenerated) {
      q.mark_answered();
    }
  }
  return rec;
}

AnswerRecord answer_correlation(Query& q, const CooccurrenceModel& m, std::size_t k,
                                double theta) {
  AnswerRecord rec;
  rec.query_id = q.query_id;
  if (!m.in_vocabulary(q.subject) || !eligible(m.object(q.subject))) return rec;
  auto ranked = correlate(q.subject, m);
  if (ranked.size() > k) ranked.resize(k);
  for (auto& n : ranked) {
    AnswerCandidate c;
    c.object_id = std::move(n.object_id);
    c.confidence = std::max(0.0, n.score);
    rec.candidates.push_back(std::move(c));
  }
  if (!rec.candidates.empty() && rec.candidates.front().confidence >= theta &&
      q.state == QueryState::kGenerated) {
    q.mark_answered();
  }
  return rec;
}

}  // namespace autoq
