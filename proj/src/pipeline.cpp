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

#include "autoq/pipeline.hpp"

#include <filesystem>
#include <set>
#include <unordered_map>

#include "autoq/answer.hpp"
#include "autoq/serialize.hpp"

namespace autoq {

namespace fs = std::filesystem;

namespace {

std::vector<Query> require_queries(const Workspace& ws) {
  if (!fs::exists(ws.queries_file())) throw DataError("no queries; run generate first");
  return read_queries(ws.queries_file());
}

std::vector<AnswerRecord> require_answers(const Workspace& ws) {
  if (!fs::exists(ws.answers_file())) throw DataError("no answers; run answer first");
  return read_answers(ws.answers_file());
}

ObjectTable require_objects(const Workspace& ws) {
  if (!fs::exists(ws.objects_dir() / "objects.jsonl")) {
    throw DataError("no objects; run objects first");
  }
  return read_objects(ws.objects_dir());
}

void write_report(const Workspace& ws, const std::string& name, const Json& j,
                  const std::string& text) {
  write_file(ws.reports_dir() / (name + ".json"), dump(j));
  write_file(ws.reports_dir() / (name + ".txt"), "# version 1\n" + text);
}

}  // namespace

Corpus stage_ingest(const Workspace& ws, const Resources& res, const fs::path& source,
                    const std::string& corpus_id) {
  Corpus c = ingest_corpus(source, corpus_id, res.lex);
  write_corpus(ws.corpora_dir() / (corpus_id + ".jsonl"), c);
  return c;
}

ObjectTable stage_objects(const Workspace& ws, const Resources& res) {
  const auto corpora = ws.load_corpora(res.lex);
  if (corpora.empty()) throw DataError("no corpora; run ingest first");
  ObjectTable t = extract_objects(std::span<const Corpus>(corpora), res.gaz);
  write_objects(ws.objects_dir(), t);
  return t;
}

GenerationResult stage_generate(const Workspace& ws, const Resources& res,
                                unsigned techniques, std::size_t max_queries) {
  const auto corpora = ws.load_corpora(res.lex);
  const auto objects = require_objects(ws);
  RealizationOptions opts;
  opts.copula = detect_copula(corpora);
  auto result = generate_queries(objects.objects, res.verbs, res.rules.adjectives,
                                 techniques, max_queries, opts);
  write_queries(ws.queries_file(), result.queries);
  return result;
}

PruneSummary stage_prune(const Workspace& ws, const Resources& res, double theta) {
  auto queries = require_queries(ws);
  const auto objects = require_objects(ws);
  for (auto& q : queries) {
    q.state = QueryState::kGenerated;
    q.prune_reason.clear();
  }
  PruneSummary s;
  s.rule_pruned = apply_rule_pruning(queries, objects, res.rules);

  if (fs::exists(ws.answers_file())) {
    const auto answers = read_answers(ws.answers_file());
    std::unordered_map<std::string, const AnswerRecord*> by_id;
    for (const auto& a : answers) by_id[a.query_id] = &a;
    auto history = NonsenseHistory::load(ws.history_file());
    const std::int64_t ts = history.last_ts() + 1;
    std::vector<HistoryRecord> log;
    for (auto& q : queries) {
      if (q.state == QueryState::kPruned) continue;
      auto it = by_id.find(q.query_id);
      if (it == by_id.end()) continue;
      const auto d = prune_by_confidence(q, it->second->candidates, theta, history, ts);
      log.push_back({q.query_id, history.entries().at(q.query_id).back()});
      ++(d.keep ? s.answered : s.nonsense);
    }
    append_history(ws.history_file(), log);
  }
  write_queries(ws.queries_file(), queries);
  return s;
}

AnswerSummary stage_answer(const Workspace& ws, const Resources& res, double theta,
                           std::size_t topk, std::size_t min_count) {
  const auto corpora = ws.load_corpora(res.lex);
  const auto objects = require_objects(ws);
  auto all = require_queries(ws);
  std::vector<Query> queries;
  for (auto& q : all) {
    if (q.kind != QueryKind::kAnalogyExtension) queries.push_back(std::move(q));
  }

  const auto index = SentenceIndex::build(corpora);
  const auto model = CooccurrenceModel::build(corpora, objects, min_count);
  const RetrievalContext ctx{index, objects, res.lex};
  auto history = NonsenseHistory::load(ws.history_file());
  const std::int64_t ts = history.last_ts() + 1;

  AnswerSummary s;
  std::vector<AnswerRecord> answers;
  std::vector<HistoryRecord> log;
  std::vector<Query> extensions;
  std::set<std::string> extension_ids;

  auto settle = [&](Query& q, AnswerRecord rec) {
    ++s.attempted;
    const auto d = prune_by_confidence(q, rec.candidates, theta, history, ts);
    log.push_back({q.query_id, history.entries().at(q.query_id).back()});
    ++(d.keep ? s.answered : s.nonsense);
    answers.push_back(std::move(rec));
  };

  for (auto& q : queries) {
    if (q.state == QueryState::kPruned) continue;
    q.reopen();
    AnswerRecord rec;
    switch (q.kind) {
      case QueryKind::kAnalogy:
        rec = answer_analogy(q, model, topk, theta);
        break;
      case QueryKind::kCorrelation:
        rec = answer_correlation(q, model, topk, theta);
        break;
      default:
        rec.query_id = q.query_id;
        rec.candidates = answer_query(q, ctx, topk, theta);
        break;
    }
    if (q.kind == QueryKind::kAnalogy && !rec.candidates.empty() &&
        rec.candidates.front().confidence >= theta) {
      const auto& top = rec.candidates.front();
      for (auto& e : gen_analogy_extensions(q, objects.at(q.subject),
                                            objects.at(*top.object_id), top.confidence,
                                            theta)) {
        if (extension_ids.insert(e.query_id).second) extensions.push_back(std::move(e));
      }
    }
    settle(q, std::move(rec));
  }

  for (auto& e : extensions) {
    AnswerRecord rec;
    rec.query_id = e.query_id;
    rec.candidates = answer_query(e, ctx, topk, theta);
    settle(e, std::move(rec));
    queries.push_back(std::move(e));
    ++s.extensions;
  }

  write_queries(ws.queries_file(), queries);
  write_answers(ws.answers_file(), answers);
  append_history(ws.history_file(), log);
  return s;
}

CoverageReport stage_coverage(const Workspace& ws, double theta) {
  const auto r = coverage(require_queries(ws), require_answers(ws), theta);
  write_report(ws, "coverage", to_json(r), format_coverage(r));
  return r;
}

std::optional<PrecisionEstimate> stage_precision(const Workspace& ws) {
  const auto labels = read_labels(ws.labels_file());
  std::optional<PrecisionEstimate> p;
  bool any = false;
  for (const auto& l : live_labels(labels)) any = any || l.answer_correct.has_value();
  if (any) p = precision_with_interval(labels);
  Json j = p ? to_json(*p) : Json{{"version", kFormatVersion}, {"attempted", 0}};
  write_report(ws, "precision", j, format_precision(p));
  return p;
}

UtilityBreakdown stage_utility(const Workspace& ws) {
  const auto u = utility_breakdown(read_labels(ws.labels_file()));
  write_report(ws, "utility", to_json(u), format_utility(u));
  return u;
}

std::vector<GapRecord> stage_gaps(const Workspace& ws, double theta) {
  const auto gaps =
      gap_report(require_queries(ws), require_answers(ws), require_objects(ws), theta);
  write_report(ws, "gaps", to_json(std::span<const GapRecord>(gaps)), format_gaps(gaps));
  return gaps;
}

PairingOutput stage_pair(const Workspace& ws, const Resources& res, double theta,
                         double tau, std::size_t budget) {
  const auto corpora = ws.load_corpora(res.lex);
  PairingInputs in{corpora, res.lex, res.gaz, res.verbs, res.rules, {}};
  in.opts.copula = detect_copula(corpora);
  PairingOutput out;
  out.scores = score_all_pairs(in, theta, budget);
  const auto ids = ws.corpus_ids();
  out.groups = group_corpuses(ids, out.scores, tau);
  write_file(ws.reports_dir() / "pair_scores.tsv", pair_scores_tsv(out.scores));
  write_file(ws.reports_dir() / "groups.json", dump(groups_json(out.groups)));
  return out;
}

Sample stage_sample(const Workspace& ws, std::size_t n, std::uint64_t seed, bool stratify) {
  auto s = sample_for_review(require_queries(ws), n, seed, stratify);
  write_file(ws.sample_file(), dump(to_json(s)));
  return s;
}

std::size_t stage_import_labels(const Workspace& ws, const fs::path& csv) {
  const auto labels = import_labels_csv(csv);
  for (const auto& l : labels) append_label(ws.labels_file(), l);
  return labels.size();
}

void run_pipeline(const Workspace& ws, const Config& cfg, const Resources& res,
                  std::size_t sample_n, std::uint64_t seed) {
  stage_objects(ws, res);
  stage_generate(ws, res, kTechAll, cfg.max_queries);
  stage_prune(ws, res, cfg.theta);
  stage_answer(ws, res, cfg.theta, cfg.topk, cfg.min_count);
  stage_coverage(ws, cfg.theta);
  stage_precision(ws);
  stage_utility(ws);
  stage_gaps(ws, cfg.theta);
  stage_pair(ws, res, cfg.theta, cfg.tau, cfg.budget);
  stage_sample(ws, sample_n, seed, true);
}

}  // namespace autoq
