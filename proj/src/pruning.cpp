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

#include "autoq/pruning.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "autoq/lexicon.hpp"

namespace autoq {

namespace {

std::size_t idx(Interrogative i) { return static_cast<std::size_t>(i); }
std::size_t idx(ObjectType t) { return static_cast<std::size_t>(t); }

bool parse_keep(const std::string& s, const std::filesystem::path& path,
                std::size_t line) {
  if (s == "keep") return true;
  if (s == "prune") return false;
  throw DataError(path.string() + ":" + std::to_string(line) +
                  ": expected keep|prune, got '" + s + "'");
}

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

}  // namespace

PruneRuleTable::PruneRuleTable() {
  for (auto& row : keep_) row.fill(true);
}

PruneRuleTable PruneRuleTable::default_table() {
  using I = Interrogative;
  using T = ObjectType;
  PruneRuleTable t;
  t.set(I::kWho, T::kObject, false);
  t.set(I::kWho, T::kLocation, false);
  t.set(I::kWho, T::kConcept, false);
  t.set(I::kWhat, T::kPerson, false);
  t.set(I::kWhy, T::kPerson, false);
  t.set(I::kWhy, T::kObject, false);
  t.set(I::kWhy, T::kLocation, false);
  t.set(I::kWhere, T::kConcept, false);
  return t;
}

PruneRuleTable PruneRuleTable::load(const std::filesystem::path& path) {
  PruneRuleTable t;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& row : read_tsv(path)) {
    if (row.fields.size() != 3) {
      throw DataError(where(path, row.line_no) + "expected 3 fields");
    }
    Interrogative i;
    ObjectType ty;
    try {
      i = parse_interrogative(row.fields[0]);
      ty = parse_object_type(row.fields[1]);
    } catch (const DataError& e) {
      throw DataError(where(path, row.line_no) + e.what());
    }
    if (!seen.insert({idx(i), idx(ty)}).second) {
      throw DataError(where(path, row.line_no) + "duplicate cell " +
                      std::string(to_string(i)) + "/" + std::string(to_string(ty)));
    }
    t.set(i, ty, parse_keep(row.fields[2], path, row.line_no));
  }
  if (seen.size() != 24) {
    throw DataError(path.string() + ": expected 24 cells, found " +
                    std::to_string(seen.size()));
  }
  return t;
}

bool PruneRuleTable::keeps(Interrogative i, ObjectType t) const {
  return keep_[idx(i)][idx(t)];
}

void PruneRuleTable::set(Interrogative i, ObjectType t, bool keep) {
  keep_[idx(i)][idx(t)] = keep;
}

std::size_t PruneRuleTable::prune_count() const {
  std::size_t n = 0;
  for (const auto& row : keep_) n += static_cast<std::size_t>(std::count(row.begin(), row.end(), false));
  return n;
}

VerbFrameTable VerbFrameTable::load(const std::filesystem::path& path) {
  VerbFrameTable t;
  std::map<std::string, std::set<std::pair<std::size_t, std::size_t>>> seen;
  for (const auto& row : read_tsv(path)) {
    if (row.fields.size() != 4) {
      throw DataError(where(path, row.line_no) + "expected 4 fields");
    }
    ObjectType s, o;
    try {
      s = parse_object_type(row.fields[1]);
      o = parse_object_type(row.fields[2]);
    } catch (const DataError& e) {
      throw DataError(where(path, row.line_no) + e.what());
    }
    const auto& verb = row.fields[0];
    if (!seen[verb].insert({idx(s), idx(o)}).second) {
      throw DataError(where(path, row.line_no) + "duplicate frame cell for '" + verb + "'");
    }
    t.set(verb, s, o, parse_keep(row.fields[3], path, row.line_no));
  }
  for (const auto& [verb, cells] : seen) {
    if (cells.size() != 16) {
      throw DataError(path.string() + ": verb '" + verb + "' has " +
                      std::to_string(cells.size()) + " of 16 frame cells");
    }
  }
  return t;
}

VerbFrameTable VerbFrameTable::from_lexicon(const VerbLexicon& verbs) {
  VerbFrameTable t;
  for (const auto& v : verbs.verbs) {
    for (auto s : kAllObjectTypes) {
      for (auto o : kAllObjectTypes) {
        const bool keep =
            std::find(v.subject_types.begin(), v.subject_types.end(), s) !=
                v.subject_types.end() &&
            std::find(v.object_types.begin(), v.object_types.end(), o) !=
                v.object_types.end();
        t.set(v.lemma, s, o, keep);
      }
    }
  }
  return t;
}

bool VerbFrameTable::has_verb(std::string_view lemma) const {
  return frames_.find(lemma) != frames_.end();
}

bool VerbFrameTable::keeps(std::string_view lemma, ObjectType subject,
                           ObjectType object) const {
  auto it = frames_.find(lemma);
  if (it == frames_.end()) {
    throw DataError("verb '" + std::string(lemma) + "' has no frame");
  }
  return it->second[idx(subject)][idx(object)];
}

void VerbFrameTable::set(const std::string& lemma, ObjectType subject, ObjectType object,
                         bool keep) {
  auto [it, inserted] = frames_.try_emplace(lemma);
  if (inserted) {
    for (auto& row : it->second) row.fill(false);
  }
  it->second[idx(subject)][idx(object)] = keep;
}

void VerbFrameTable::require_covers(const VerbLexicon& verbs) const {
  for (const auto& v : verbs.verbs) {
    if (!has_verb(v.lemma)) {
      throw DataError("verb '" + v.lemma + "' has no frame");
    }
  }
}

void NonsenseHistory::record(const std::string& query_id, std::int64_t ts, bool nonsense,
                             double max_conf) {
  auto& list = entries_[query_id];
  if (!list.empty() && ts <= list.back().ts) {
    throw PreconditionError("history timestamp " + std::to_string(ts) +
                            " not after " + std::to_string(list.back().ts) +
                            " for query " + query_id);
  }
  list.push_back({ts, nonsense, max_conf});
  last_ts_ = std::max(last_ts_, ts);
}

NonsenseHistory NonsenseHistory::load(const std::filesystem::path& path) {
  NonsenseHistory h;
  std::ifstream in(path);
  if (!in) return h;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      auto rec = nlohmann::json::parse(line);
      const auto cls = rec.at("class").get<std::string>();
      if (cls != "nonsense" && cls != "non-nonsense") {
        throw DataError("unknown class '" + cls + "'");
      }
      h.record(rec.at("query_id").get<std::string>(), rec.at("ts").get<std::int64_t>(),
               cls == "nonsense", rec.at("max_conf").get<double>());
    } catch (const nlohmann::json::exception& e) {
      throw DataError(where(path, line_no) + e.what());
    } catch (const PreconditionError& e) {
      throw DataError(where(path, line_no) + e.what());
    } catch (const DataError& e) {
      throw DataError(where(path, line_no) + e.what());
    }
  }
  return h;
}

void append_history(const std::filesystem::path& path,
                    std::span<const HistoryRecord> records) {
  if (records.empty()) return;
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw DataError("cannot append to " + path.string());
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["query_id"] = r.query_id;
    j["ts"] = r.entry.ts;
    j["class"] = r.entry.nonsense ? "nonsense" : "non-nonsense";
    j["max_conf"] = r.entry.max_conf;
    out << j.dump() << '\n';
  }
  if (!out) throw DataError("write failed: " + path.string());
}

PruneDecision prune_interrogative_type(const Query& q, const ObjectTable& objects,
                                       const PruneRuleTable& table) {
  if (q.kind != QueryKind::kObjectJournalism || !q.interrogative) {
    throw PreconditionError("interrogative pruning applies to object journalism only");
  }
  const auto type = objects.at(q.subject).type;
  std::string rule = "interrogative_type:" + std::string(to_string(*q.interrogative)) +
                     "/" + std::string(to_string(type));
  if (table.keeps(*q.interrogative, type)) return PruneDecision::Keep(std::move(rule));
  return PruneDecision::Prune(std::move(rule));
}

PruneDecision prune_pair_frame(const Query& q, const ObjectTable& objects,
                               const VerbFrameTable& frames) {
  if (q.kind != QueryKind::kPairJournalism || !q.object2) {
    throw PreconditionError("frame pruning applies to pair journalism only");
  }
  const auto st = objects.at(q.subject).type;
  const auto ot = objects.at(*q.object2).type;
  if (!q.verb) return PruneDecision::Keep("pair_template");
  std::string rule = "verb_frame:" + *q.verb + ":" + std::string(to_string(st)) + "/" +
                     std::string(to_string(ot));
  if (frames.keeps(*q.verb, st, ot)) return PruneDecision::Keep(std::move(rule));
  return PruneDecision::Prune(std::move(rule));
}

PruneDecision prune_comparative(const Query& q, const ObjectTable& objects,
                                const ComparativeLexicon& adjectives) {
  if (q.kind != QueryKind::kComparative || !q.object2 || !q.adjective) {
    throw PreconditionError("comparative pruning applies to comparative queries only");
  }
  const auto* entry = adjectives.find(*q.adjective);
  if (!entry) throw DataError("comparative '" + *q.adjective + "' not in lexicon");
  const auto st = objects.at(q.subject).type;
  const auto ot = objects.at(*q.object2).type;
  std::string rule = "comparative_type:" + *q.adjective + ":" +
                     std::string(to_string(st)) + "/" + std::string(to_string(ot));
  if (entry->permits(st, ot)) return PruneDecision::Keep(std::move(rule));
  return PruneDecision::Prune(std::move(rule));
}

PruneDecision prune_by_confidence(Query& q, std::span<const AnswerCandidate> candidates,
                                  double theta, NonsenseHistory& history,
                                  std::int64_t ts) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw PreconditionError("theta must lie in [0, 1]");
  }
  if (q.state == QueryState::kPruned) {
    throw PreconditionError("query " + q.query_id + " is pruned");
  }
  double best = 0.0;
  for (const auto& c : candidates) best = std::max(best, c.confidence);
  const bool nonsense = candidates.empty() || best < theta;
  history.record(q.query_id, ts, nonsense, best);
  q.reopen();
  if (nonsense) {
    q.mark_nonsense();
    return PruneDecision::Prune("confidence_below_theta");
  }
  q.mark_answered();
  return PruneDecision::Keep("confidence");
}

double nonsense_reclassification_rate(const NonsenseHistory& history) {
  std::size_t ever = 0, flipped = 0;
  for (const auto& [id, list] : history.entries()) {
    bool seen_nonsense = false, flip = false;
    for (const auto& e : list) {
      if (e.nonsense) {
        seen_nonsense = true;
      } else if (seen_nonsense) {
        flip = true;
      }
    }
    if (seen_nonsense) ++ever;
    if (flip) ++flipped;
  }
  return ever == 0 ? 0.0 : static_cast<double>(flipped) / static_cast<double>(ever);
}

std::size_t apply_rule_pruning(std::vector<Query>& queries, const ObjectTable& objects,
                               const RuleTables& tables) {
  std::size_t pruned = 0;
  for (auto& q : queries) {
    if (q.state != QueryState::kGenerated) continue;
    PruneDecision d;
    switch (q.kind) {
      case QueryKind::kObjectJournalism:
        d = prune_interrogative_type(q, objects, tables.interrogative);
        break;
      case QueryKind::kPairJournalism:
        d = prune_pair_frame(q, objects, tables.frames);
        break;
      case QueryKind::kComparative:
        d = prune_comparative(q, objects, tables.adjectives);
        break;
      default:
        continue;
    }
    if (!d.keep) {
      q.mark_pruned(std::move(d.rule));
      ++pruned;
    }
  }
  return pruned;
}

}  // namespace autoq
