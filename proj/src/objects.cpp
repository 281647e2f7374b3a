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

#include "autoq/objects.hpp"

#include <algorithm>
#include <map>

namespace autoq {

namespace {

bool has_suffix_from(std::string_view word,
                     const std::unordered_set<std::string>& suffixes) {
  for (const auto& suf : suffixes) {
    if (word.size() >= suf.size() + 2 && ends_with(word, suf)) return true;
  }
  return false;
}

}  // namespace

TypeGazetteer TypeGazetteer::load(const std::filesystem::path& path) {
  TypeGazetteer gaz;
  std::unordered_map<std::string, std::string> seen;
  for (const auto& row : read_tsv(path)) {
    auto where = path.string() + ":" + std::to_string(row.line_no);
    if (row.fields.size() < 2 || row.fields[0].empty()) {
      throw DataError(where + ": expected term<TAB>category");
    }
    const auto& term = row.fields[0];
    const auto& cat = row.fields[1];
    if (auto [it, fresh] = seen.emplace(term, cat); !fresh && it->second != cat) {
      throw DataError(where + ": '" + term + "' listed under both '" +
                      it->second + "' and '" + cat + "'");
    }
    if (cat != "title" && term != to_lower(term)) {
      throw DataError(where + ": '" + term + "' must be lowercase");
    }
    if (cat == "title") {
      gaz.titles.insert(term);
    } else if (cat == "person") {
      gaz.person_names.insert(term);
    } else if (cat == "location") {
      gaz.location_terms.insert(term);
    } else if (cat == "location_suffix") {
      gaz.location_suffixes.insert(term);
    } else if (cat == "concept") {
      gaz.concept_terms.insert(term);
    } else if (cat == "concept_suffix") {
      gaz.concept_suffixes.insert(term);
    } else if (cat == "quantified") {
      gaz.quantified_terms.insert(term);
    } else {
      throw DataError(where + ": unknown category '" + cat + "'");
    }
  }
  return gaz;
}

TypeGazetteer TypeGazetteer::load_default() {
  return load(default_data_dir() / "gazetteer.tsv");
}

std::string CanonicalObject::display() const {
  return article.empty() ? canonical : article + " " + canonical;
}

const CanonicalObject* ObjectTable::find(std::string_view object_id) const {
  if (auto it = by_id_.find(std::string(object_id));
      it != by_id_.end() && it->second < objects.size() &&
      objects[it->second].object_id == object_id) {
    return &objects[it->second];
  }
  // Stale or missing index entry: fall back to a scan.
  for (const auto& o : objects) {
    if (o.object_id == object_id) return &o;
  }
  return nullptr;
}

const CanonicalObject& ObjectTable::at(std::string_view object_id) const {
  const auto* o = find(object_id);
  if (!o) throw DataError("unknown object_id '" + std::string(object_id) + "'");
  return *o;
}

void ObjectTable::reindex() {
  by_id_.clear();
  for (std::size_t i = 0; i < objects.size(); ++i) {
    by_id_[objects[i].object_id] = i;
  }
}

std::string object_id_for(std::string_view canonical) {
  return stable_id(std::string("obj\x1f") + std::string(canonical));
}

std::string canonical_form(const std::vector<Token>& tokens, std::size_t first,
                           std::size_t last) {
  while (first < last && tokens[first].pos == Pos::kDet) ++first;
  std::vector<std::string> words;
  for (std::size_t i = first; i < last; ++i) {
    const Token& t = tokens[i];
    if (t.pos == Pos::kPropn) {
      words.push_back(t.surface);
    } else if (i + 1 == last && t.pos == Pos::kNoun) {
      words.push_back(lemmatize_noun(to_lower(t.surface)));
    } else {
      words.push_back(to_lower(t.surface));
    }
  }
  return join(words, " ");
}

std::string canonicalize(std::string_view phrase, const Lexicon& lex) {
  Sentence s = analyze_phrase(phrase, lex);
  std::size_t last = s.tokens.size();
  while (last > 0 && !has_alnum(s.tokens[last - 1].surface)) --last;
  return canonical_form(s.tokens, 0, last);
}

TypeDecision classify_type(const CanonicalObject& obj,
                           const TypeGazetteer& gaz) {
  TypeDecision d;
  auto words = split(obj.canonical, ' ');
  const std::string full = to_lower(obj.canonical);
  const std::string head = to_lower(words.back());
  const bool multiword = words.size() > 1;

  if (gaz.titles.count(words.front()) || gaz.person_names.count(full) ||
      (obj.proper && multiword && gaz.person_names.count(to_lower(words.front())))) {
    d.type = ObjectType::kPerson;
  } else if (gaz.location_terms.count(full) || gaz.location_terms.count(head) ||
             has_suffix_from(head, gaz.location_suffixes)) {
    d.type = ObjectType::kLocation;
  } else if (gaz.concept_terms.count(full) || gaz.concept_terms.count(head) ||
             has_suffix_from(head, gaz.concept_suffixes)) {
    d.type = ObjectType::kConcept;
  } else if (obj.proper && multiword && gaz.proper_multiword_is_person) {
    d.type = ObjectType::kPerson;
  } else {
    d.type = ObjectType::kObject;
  }
  d.quantified = d.type == ObjectType::kConcept ||
                 gaz.quantified_terms.count(head) > 0 ||
                 gaz.quantified_terms.count(full) > 0;
  return d;
}

CanonicalObject make_object(std::string canonical, const TypeGazetteer& gaz,
                            bool proper, std::string article) {
  CanonicalObject o;
  o.object_id = object_id_for(canonical);
  o.canonical = std::move(canonical);
  o.proper = proper;
  o.article = std::move(article);
  o.mention_count = 1;
  auto d = classify_type(o, gaz);
  o.type = d.type;
  o.quantified = d.quantified;
  return o;
}

ObjectTable extract_objects(const Corpus& corpus, const TypeGazetteer& gaz) {
  return extract_objects(std::span<const Corpus>(&corpus, 1), gaz);
}

ObjectTable extract_objects(std::span<const Corpus> corpora,
                            const TypeGazetteer& gaz) {
  struct Acc {
    bool proper = true;
    std::map<std::string, std::size_t> articles;
    std::vector<std::size_t> mention_ids;
  };
  std::map<std::string, Acc> by_canonical;
  std::vector<ObjectMention> mentions;

  for (const auto& corpus : corpora) {
    for (const auto& doc : corpus.documents) {
      for (const auto& sent : doc.sentences) {
        for (const auto& chunk : sent.chunks) {
          auto canonical = canonical_form(sent.tokens, chunk.first, chunk.last);
          if (canonical.empty()) continue;
          Acc& acc = by_canonical[canonical];
          bool proper = true;
          std::size_t body = chunk.first;
          while (body < chunk.last && sent.tokens[body].pos == Pos::kDet) ++body;
          for (std::size_t i = body; i < chunk.last; ++i) {
            proper = proper && sent.tokens[i].pos == Pos::kPropn;
          }
          acc.proper = acc.proper && proper;
          if (body > chunk.first) {
            auto det = to_lower(sent.tokens[chunk.first].surface);
            if (det == "the" || det == "a" || det == "an") ++acc.articles[det];
          }
          acc.mention_ids.push_back(mentions.size());
          mentions.push_back({sent.id, chunk, sent.chunk_text(chunk), 0});
        }
      }
    }
  }

  ObjectTable table;
  table.mentions = std::move(mentions);
  for (auto& [canonical, acc] : by_canonical) {
    CanonicalObject o;
    o.object_id = object_id_for(canonical);
    o.canonical = canonical;
    o.mention_count = acc.mention_ids.size();
    o.proper = acc.proper;
    std::size_t with_article = 0;
    std::string best;
    std::size_t best_n = 0;
    // std::map order makes "a" < "an" < "the"; prefer "the" on ties.
    for (const auto& [det, n] : acc.articles) {
      with_article += n;
      if (n > best_n || (n == best_n && det == "the")) {
        best = det;
        best_n = n;
      }
    }
    if (with_article * 2 > o.mention_count) o.article = best;
    auto d = classify_type(o, gaz);
    o.type = d.type;
    o.quantified = d.quantified;
    for (auto id : acc.mention_ids) {
      table.mentions[id].object_index = table.objects.size();
    }
    table.objects.push_back(std::move(o));
  }
  table.reindex();
  return table;
}

}  // namespace autoq
