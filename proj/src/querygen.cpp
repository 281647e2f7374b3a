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

#include "autoq/querygen.hpp"

#include <algorithm>
#include <queue>

namespace autoq {

std::string_view to_string(QueryState s) {
  switch (s) {
    case QueryState::kGenerated: return "Generated";
    case QueryState::kPruned: return "Pruned";
    case QueryState::kAnswered: return "Answered";
    case QueryState::kNonsense: return "Nonsense";
  }
  return "?";
}

QueryState parse_query_state(std::string_view s) {
  for (auto st : {QueryState::kGenerated, QueryState::kPruned,
                  QueryState::kAnswered, QueryState::kNonsense}) {
    if (to_string(st) == s) return st;
  }
  throw DataError("unknown query state '" + std::string(s) + "'");
}

namespace {

void require_generated(const Query& q, std::string_view target) {
  if (q.state != QueryState::kGenerated) {
    throw PreconditionError("query " + q.query_id + ": cannot move from " +
                            std::string(to_string(q.state)) + " to " +
                            std::string(target));
  }
}

}  // namespace

void Query::mark_pruned(std::string reason) {
  require_generated(*this, "Pruned");
  state = QueryState::kPruned;
  prune_reason = std::move(reason);
}

void Query::mark_answered() {
  require_generated(*this, "Answered");
  state = QueryState::kAnswered;
}

void Query::mark_nonsense() {
  require_generated(*this, "Nonsense");
  state = QueryState::kNonsense;
}

void Query::reopen() {
  if (state == QueryState::kAnswered || state == QueryState::kNonsense) {
    state = QueryState::kGenerated;
  }
}

std::uint64_t query_hash(QueryKind kind, std::optional<Interrogative> interrogative,
                         std::string_view subject, std::string_view object2,
                         std::string_view verb, std::string_view adjective) {
  Fnv1a h;
  h.field(to_string(kind))
      .field(interrogative ? to_string(*interrogative) : std::string_view{})
      .field(subject)
      .field(object2)
      .field(verb)
      .field(adjective);
  return h.value();
}

std::string query_id_for(const Query& q) {
  return hex_id(query_hash(q.kind, q.interrogative, q.subject,
                           q.object2.value_or(""), q.verb.value_or(""),
                           q.adjective.value_or("")));
}

namespace {

std::vector<ObjectType> parse_type_list(const std::string& csv,
                                        const std::string& where) {
  std::vector<ObjectType> out;
  for (const auto& part : split(csv, ',')) {
    auto t = trim(part);
    if (t.empty()) continue;
    try {
      out.push_back(parse_object_type(t));
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
  }
  if (out.empty()) throw DataError(where + ": empty type list");
  return out;
}

bool contains(const std::vector<ObjectType>& v, ObjectType t) {
  return std::find(v.begin(), v.end(), t) != v.end();
}

}  // namespace

const VerbEntry* VerbLexicon::find(std::string_view lemma) const {
  for (const auto& v : verbs) {
    if (v.lemma == lemma) return &v;
  }
  return nullptr;
}

VerbLexicon VerbLexicon::load(const std::filesystem::path& path) {
  VerbLexicon lex;
  for (const auto& row : read_tsv(path)) {
    auto where = path.string() + ":" + std::to_string(row.line_no);
    if (row.fields.size() < 4 || row.fields[0].empty() || row.fields[1].empty()) {
      throw DataError(where + ": expected lemma, past, subject types, object types");
    }
    if (lex.find(row.fields[0])) {
      throw DataError(where + ": duplicate verb '" + row.fields[0] + "'");
    }
    lex.verbs.push_back({row.fields[0], row.fields[1],
                         parse_type_list(row.fields[2], where),
                         parse_type_list(row.fields[3], where)});
  }
  return lex;
}

VerbLexicon VerbLexicon::load_default() {
  return load(default_data_dir() / "verbs.tsv");
}

bool ComparativeEntry::permits(ObjectType a, ObjectType b) const {
  return contains(types, a) && contains(types, b) && (a == b || cross_type_allowed);
}

const ComparativeEntry* ComparativeLexicon::find(std::string_view form) const {
  for (const auto& e : entries) {
    if (e.form == form) return &e;
  }
  return nullptr;
}

ComparativeLexicon ComparativeLexicon::load(const std::filesystem::path& path) {
  ComparativeLexicon lex;
  for (const auto& row : read_tsv(path)) {
    auto where = path.string() + ":" + std::to_string(row.line_no);
    if (row.fields.size() < 3 || row.fields[0].empty()) {
      throw DataError(where + ": expected form, types, cross_type");
    }
    const auto& form = row.fields[0];
    if (!ends_with(form, "er") && form != "better" && form != "worse") {
      throw DataError(where + ": '" + form + "' is not a comparative form");
    }
    if (row.fields[2] != "0" && row.fields[2] != "1") {
      throw DataError(where + ": cross_type must be 0 or 1");
    }
    if (lex.find(form)) throw DataError(where + ": duplicate form '" + form + "'");
    lex.entries.push_back(
        {form, parse_type_list(row.fields[1], where), row.fields[2] == "1"});
  }
  return lex;
}

ComparativeLexicon ComparativeLexicon::load_default() {
  return load(default_data_dir() / "comparatives.tsv");
}

std::string detect_copula(std::span<const Corpus> corpora) {
  std::size_t present = 0;
  std::size_t past = 0;
  for (const auto& c : corpora) {
    for (const auto& d : c.documents) {
      for (const auto& s : d.sentences) {
        for (const auto& t : s.tokens) {
          auto w = to_lower(t.surface);
          if (w == "is" || w == "are" || w == "am") ++present;
          if (w == "was" || w == "were") ++past;
        }
      }
    }
  }
  return present > past ? "is" : "was";
}

unsigned parse_techniques(std::string_view csv) {
  if (trim(csv) == "all") return kTechAll;
  unsigned mask = 0;
  for (const auto& part : split(csv, ',')) {
    auto t = trim(part);
    if (t == "object") {
      mask |= kTechObject;
    } else if (t == "pair") {
      mask |= kTechPair;
    } else if (t == "comparative") {
      mask |= kTechComparative;
    } else if (t == "analogy") {
      mask |= kTechAnalogy;
    } else if (t == "correlation") {
      mask |= kTechCorrelation;
    } else if (t == "all") {
      mask |= kTechAll;
    } else {
      throw DataError("unknown technique '" + std::string(t) + "'");
    }
  }
  if (mask == 0) throw DataError("no techniques selected");
  return mask;
}

QueryEnumerator::QueryEnumerator(std::span<const CanonicalObject> objects,
                                 const VerbLexicon& verbs,
                                 const ComparativeLexicon& adjectives,
                                 RealizationOptions opts)
    : objects_(objects), verbs_(verbs), adjectives_(adjectives), opts_(std::move(opts)) {}

void QueryEnumerator::for_each(unsigned techniques, const Visitor& visit) const {
  for_each_pair(techniques, [](std::uint32_t, std::uint32_t) { return true; }, visit);
}

void QueryEnumerator::for_each_pair(
    unsigned techniques, const std::function<bool(std::uint32_t, std::uint32_t)>& allow,
    const Visitor& visit) const {
  const auto n = static_cast<std::uint32_t>(objects_.size());
  auto emit = [&](const QuerySlots& s) { visit(s, hash(s)); };

  if (techniques & kTechObject) {
    for (std::uint32_t a = 0; a < n; ++a) {
      for (Interrogative i : kAllInterrogatives) {
        emit({QueryKind::kObjectJournalism, i, a, {}, {}, {}});
      }
    }
  }
  if (techniques & kTechPair) {
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        if (a == b || !allow(a, b)) continue;
        emit({QueryKind::kPairJournalism, Interrogative::kWhen, a, b, {}, {}});
        emit({QueryKind::kPairJournalism, Interrogative::kWhere, a, b, {}, {}});
        for (std::uint32_t v = 0; v < verbs_.verbs.size(); ++v) {
          emit({QueryKind::kPairJournalism, Interrogative::kWhy, a, b, v, {}});
          emit({QueryKind::kPairJournalism, Interrogative::kHow, a, b, v, {}});
        }
      }
    }
  }
  if (techniques & kTechComparative) {
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        if (a == b || !allow(a, b)) continue;
        for (std::uint32_t j = 0; j < adjectives_.entries.size(); ++j) {
          if (!adjectives_.entries[j].permits(objects_[a].type, objects_[b].type)) {
            continue;
          }
          emit({QueryKind::kComparative, std::nullopt, a, b, {}, j});
        }
      }
    }
  }
  if (techniques & kTechAnalogy) {
    for (std::uint32_t a = 0; a < n; ++a) {
      auto i = objects_[a].type == ObjectType::kPerson ? Interrogative::kWho
                                                       : Interrogative::kWhat;
      emit({QueryKind::kAnalogy, i, a, {}, {}, {}});
    }
  }
  if (techniques & kTechCorrelation) {
    for (std::uint32_t a = 0; a < n; ++a) {
      const auto& o = objects_[a];
      if (!o.quantified && o.type != ObjectType::kConcept) continue;
      emit({QueryKind::kCorrelation, Interrogative::kWhat, a, {}, {}, {}});
    }
  }
}

std::uint64_t QueryEnumerator::hash(const QuerySlots& s) const {
  return query_hash(s.kind, s.interrogative, objects_[s.subject].object_id,
                    s.object2 ? std::string_view(objects_[*s.object2].object_id)
                              : std::string_view{},
                    s.verb ? std::string_view(verbs_.verbs[*s.verb].lemma)
                           : std::string_view{},
                    s.adjective ? std::string_view(adjectives_.entries[*s.adjective].form)
                                : std::string_view{});
}

Query QueryEnumerator::realize(const QuerySlots& s) const {
  const CanonicalObject& a = objects_[s.subject];
  Query q;
  q.kind = s.kind;
  q.interrogative = s.interrogative;
  q.subject = a.object_id;
  const CanonicalObject* b = s.object2 ? &objects_[*s.object2] : nullptr;
  if (b) q.object2 = b->object_id;
  if (s.verb) q.verb = verbs_.verbs[*s.verb].lemma;
  if (s.adjective) q.adjective = adjectives_.entries[*s.adjective].form;

  const std::string wh = s.interrogative ? std::string(to_string(*s.interrogative)) : "";
  switch (s.kind) {
    case QueryKind::kObjectJournalism:
      q.surface = wh + " " + opts_.copula + " " + a.display() + "?";
      break;
    case QueryKind::kPairJournalism:
      if (s.interrogative == Interrogative::kWhen) {
        q.surface = "Was " + a.display() + " after " + b->display() + "?";
      } else if (s.interrogative == Interrogative::kWhere) {
        q.surface = "Where is " + a.display() + " located relative to " +
                    b->display() + "?";
      } else {
        q.surface = wh + " did " + a.display() + " " + *q.verb + " " +
                    b->display() + "?";
      }
      break;
    case QueryKind::kComparative:
      q.surface = "Is " + a.display() + " " + *q.adjective + " than " +
                  b->display() + "?";
      break;
    case QueryKind::kAnalogy:
      q.surface = wh + " is most like " + a.display() + "?";
      break;
    case QueryKind::kCorrelation:
      q.surface = "What is most strongly correlated with " + a.display() + "?";
      break;
    case QueryKind::kAnalogyExtension:
      throw PreconditionError("analogy extensions are built from answers");
  }
  q.query_id = hex_id(hash(s));
  return q;
}

namespace {

std::vector<Query> realize_all(std::span<const CanonicalObject> objects,
                               const VerbLexicon& verbs,
                               const ComparativeLexicon& adjectives,
                               unsigned techniques, const RealizationOptions& opts) {
  QueryEnumerator e(objects, verbs, adjectives, opts);
  std::vector<Query> out;
  e.for_each(techniques, [&](const QuerySlots& s, std::uint64_t) {
    out.push_back(e.realize(s));
  });
  return out;
}

const VerbLexicon& empty_verbs() {
  static const VerbLexicon v;
  return v;
}

const ComparativeLexicon& empty_adjectives() {
  static const ComparativeLexicon c;
  return c;
}

}  // namespace

std::vector<Query> gen_object_queries(std::span<const CanonicalObject> objects,
                                      const RealizationOptions& opts) {
  return realize_all(objects, empty_verbs(), empty_adjectives(), kTechObject, opts);
}

std::vector<Query> gen_pair_queries(std::span<const CanonicalObject> objects,
                                    const VerbLexicon& verbs) {
  return realize_all(objects, verbs, empty_adjectives(), kTechPair, {});
}

std::vector<Query> gen_comparative_queries(std::span<const CanonicalObject> objects,
                                           const ComparativeLexicon& adjectives) {
  return realize_all(objects, empty_verbs(), adjectives, kTechComparative, {});
}

std::vector<Query> gen_analogy_queries(std::span<const CanonicalObject> objects) {
  return realize_all(objects, empty_verbs(), empty_adjectives(), kTechAnalogy, {});
}

std::vector<Query> gen_correlation_queries(std::span<const CanonicalObject> objects) {
  return realize_all(objects, empty_verbs(), empty_adjectives(), kTechCorrelation, {});
}

std::vector<Query> gen_analogy_extensions(const Query& analogy,
                                          const CanonicalObject& subject,
                                          const CanonicalObject& answer,
                                          double confidence, double theta) {
  if (analogy.kind != QueryKind::kAnalogy) {
    throw PreconditionError("query " + analogy.query_id + " is not an analogy");
  }
  if (analogy.state != QueryState::kAnswered || confidence < theta) {
    throw PreconditionError("analogy " + analogy.query_id + " is not answered");
  }
  if (subject.object_id != analogy.subject) {
    throw PreconditionError("subject does not match analogy " + analogy.query_id);
  }
  if (answer.object_id == subject.object_id) {
    throw PreconditionError("analogy answer equals its subject");
  }
  std::vector<Query> out(2);
  out[0].interrogative = Interrogative::kWhy;
  out[0].surface = "Why is " + answer.display() + " most like " + subject.display() + "?";
  out[1].interrogative = Interrogative::kWhat;
  out[1].surface = "What is the evidence and reasoning for that choice?";
  for (auto& q : out) {
    q.kind = QueryKind::kAnalogyExtension;
    q.subject = subject.object_id;
    q.object2 = answer.object_id;
    q.query_id = query_id_for(q);
  }
  return out;
}

GenerationResult generate_queries(std::span<const CanonicalObject> objects,
                                  const VerbLexicon& verbs,
                                  const ComparativeLexicon& adjectives,
                                  unsigned techniques, std::size_t max_queries,
                                  const RealizationOptions& opts) {
  struct Kept {
    std::uint64_t id;
    std::size_t seq;
    QuerySlots slots;
  };
  auto by_id = [](const Kept& x, const Kept& y) { return x.id < y.id; };
  using Heap = std::priority_queue<Kept, std::vector<Kept>, decltype(by_id)>;
  // Linear techniques (one query family per object) fill the cap first;
  // pair and comparative queries compete for what is left.
  Heap linear(by_id), quadratic(by_id);
  auto offer = [&](Heap& heap, Kept k) {
    if (max_queries == 0) return;
    if (heap.size() < max_queries) {
      heap.push(std::move(k));
    } else if (k.id < heap.top().id) {
      heap.pop();
      heap.push(std::move(k));
    }
  };

  QueryEnumerator e(objects, verbs, adjectives, opts);
  GenerationResult result;
  e.for_each(techniques, [&](const QuerySlots& s, std::uint64_t id) {
    const std::size_t seq = result.enumerated++;
    const bool pairwise =
        s.kind == QueryKind::kPairJournalism || s.kind == QueryKind::kComparative;
    offer(pairwise ? quadratic : linear, {id, seq, s});
  });
  result.truncated = result.enumerated > max_queries;

  std::vector<Kept> kept;
  kept.reserve(std::min(max_queries, result.enumerated));
  while (!linear.empty()) {
    kept.push_back(linear.top());
    linear.pop();
  }
  std::vector<Kept> rest;
  while (!quadratic.empty()) {
    rest.push_back(quadratic.top());
    quadratic.pop();
  }
  // Heap pops largest first; keep the smallest ids that still fit.
  std::reverse(rest.begin(), rest.end());
  for (auto& k : rest) {
    if (kept.size() >= max_queries) break;
    kept.push_back(std::move(k));
  }
  std::sort(kept.begin(), kept.end(),
            [](const Kept& x, const Kept& y) { return x.seq < y.seq; });
  result.queries.reserve(kept.size());
  for (const auto& k : kept) result.queries.push_back(e.realize(k.slots));
  return result;
}

}  // namespace autoq
