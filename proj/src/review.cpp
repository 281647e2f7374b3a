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

#include "autoq/review.hpp"

#include <algorithm>

namespace autoq {

namespace fs = std::filesystem;

ReviewData ReviewData::load(const Workspace& ws, const Config& cfg, const Resources& res) {
  ReviewData d;
  d.theta = cfg.theta;
  if (!fs::exists(ws.queries_file())) throw DataError("no queries; run generate first");
  d.queries = read_queries(ws.queries_file());
  if (fs::exists(ws.answers_file())) d.answers = read_answers(ws.answers_file());
  if (fs::exists(ws.sample_file())) {
    d.sample = sample_from_json(Json::parse(read_file(ws.sample_file())));
  }
  for (const auto& c : ws.load_corpora(res.lex)) {
    for (const auto& doc : c.documents) {
      for (const auto& s : doc.sentences) d.sentence_text[s.id.str()] = s.text;
    }
  }
  if (fs::exists(ws.objects_dir() / "objects.jsonl")) {
    for (const auto& o : read_objects(ws.objects_dir()).objects) {
      d.object_display[o.object_id] = o.display();
    }
  }
  return d;
}

namespace {

MetricsSnapshot snapshot(const CoverageReport& cov,
                         const std::unordered_map<std::string, const Query*>& by_id,
                         std::span<const Label> log) {
  MetricsSnapshot m;
  m.coverage = cov;
  m.gaps_count = cov.total_queries - cov.answered_high_conf;
  const auto live = live_labels(log);
  m.live_labels = live.size();
  bool attempted = false;
  for (const auto& l : live) {
    attempted = attempted || l.answer_correct.has_value();
    if (l.category != Category::kNonsensical) continue;
    auto it = by_id.find(l.query_id);
    if (it != by_id.end() && it->second->state != QueryState::kPruned) ++m.disagreements;
  }
  if (attempted) m.precision = precision_with_interval(log);
  m.utility = utility_breakdown(log);
  return m;
}

std::unordered_map<std::string, const Query*> index_queries(const ReviewData& d) {
  std::unordered_map<std::string, const Query*> by_id;
  for (const auto& q : d.queries) by_id[q.query_id] = &q;
  return by_id;
}

}  // namespace

ReviewService::ReviewService(ReviewData data, fs::path label_log)
    : data_(std::move(data)), log_path_(std::move(label_log)) {
  by_id_ = index_queries(data_);
  for (const auto& a : data_.answers) answer_by_id_[a.query_id] = &a;
  if (data_.sample) {
    for (std::size_t i = 0; i < data_.sample->query_ids.size(); ++i) {
      const auto& id = data_.sample->query_ids[i];
      if (!by_id_.count(id)) throw DataError("sample names unknown query " + id);
      sample_pos_.emplace(id, i);
    }
  }
  coverage_ = coverage(data_.queries, data_.answers, data_.theta);

  for (auto& l : read_labels(log_path_)) {
    auto it = sample_pos_.find(l.query_id);
    if (it != sample_pos_.end()) {
      auto& seen = labeled_[l.reviewer];
      seen.resize(sample_pos_.size(), false);
      seen[it->second] = true;
    }
    last_ts_ = std::max(last_ts_, l.ts);
    log_.push_back(std::move(l));
  }
}

bool ReviewService::in_sample(const std::string& query_id) const {
  return sample_pos_.count(query_id) > 0;
}

std::optional<ReviewItem> ReviewService::next_review_item(const std::string& reviewer) const {
  if (!data_.sample) throw PreconditionError("no review sample prepared");
  std::shared_lock lock(mu_);
  const auto& ids = data_.sample->query_ids;
  auto seen = labeled_.find(reviewer);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (seen != labeled_.end() && seen->second[i]) continue;
    const Query& q = *by_id_.at(ids[i]);
    ReviewItem item;
    item.query_id = q.query_id;
    item.surface = q.surface;
    item.kind = q.kind;
    item.state = q.state;
    item.prune_reason = q.prune_reason;
    item.position = i;
    item.total = ids.size();
    auto a = answer_by_id_.find(q.query_id);
    if (a != answer_by_id_.end() && !a->second->candidates.empty()) {
      const auto& top = a->second->candidates.front();
      ReviewEvidence ev;
      ev.sent_id = top.sent_id;
      ev.confidence = top.confidence;
      ev.matched = top.matched;
      if (top.sent_id) {
        auto t = data_.sentence_text.find(top.sent_id->str());
        if (t != data_.sentence_text.end()) ev.text = t->second;
      } else if (top.object_id) {
        auto t = data_.object_display.find(*top.object_id);
        ev.text = t != data_.object_display.end() ? t->second : *top.object_id;
      }
      item.answer = std::move(ev);
    }
    return item;
  }
  return std::nullopt;
}

MetricsSnapshot ReviewService::submit_label(Label label) {
  if (label.reviewer.empty()) throw DataError("label needs a reviewer");
  auto pos = sample_pos_.find(label.query_id);
  if (pos == sample_pos_.end()) {
    throw DataError("query " + label.query_id + " is not in the review sample");
  }
  std::unique_lock lock(mu_);
  label.ts = last_ts_ + 1;
  append_label(log_path_, label);
  last_ts_ = label.ts;
  auto& seen = labeled_[label.reviewer];
  seen.resize(sample_pos_.size(), false);
  seen[pos->second] = true;
  log_.push_back(std::move(label));
  return compute_locked();
}

MetricsSnapshot ReviewService::metrics() const {
  std::shared_lock lock(mu_);
  return compute_locked();
}

std::vector<Label> ReviewService::labels() const {
  std::shared_lock lock(mu_);
  return log_;
}

MetricsSnapshot ReviewService::compute_locked() const {
  return snapshot(coverage_, by_id_, log_);
}

ReviewService::Page ReviewService::queries(std::optional<QueryState> state,
                                           std::optional<QueryKind> kind,
                                           std::size_t page, std::size_t page_size) const {
  Page p;
  p.page = page;
  p.page_size = page_size;
  const std::size_t first = page * page_size;
  for (const auto& q : data_.queries) {
    if (state && q.state != *state) continue;
    if (kind && q.kind != *kind) continue;
    if (p.total >= first && p.items.size() < page_size) p.items.push_back(&q);
    ++p.total;
  }
  return p;
}

MetricsSnapshot replay_metrics(const ReviewData& data, std::span<const Label> log) {
  return snapshot(coverage(data.queries, data.answers, data.theta),
                  index_queries(data), log);
}

Json to_json(const ReviewItem& item) {
  Json j;
  j["version"] = kFormatVersion;
  j["query_id"] = item.query_id;
  j["surface"] = item.surface;
  j["kind"] = to_string(item.kind);
  j["state"] = to_string(item.state);
  j["prune_reason"] = item.prune_reason;
  if (item.answer) {
    Json a;
    a["sent_id"] = item.answer->sent_id ? Json(item.answer->sent_id->str()) : Json(nullptr);
    a["text"] = item.answer->text;
    a["confidence"] = item.answer->confidence;
    a["matched"] = item.answer->matched;
    j["answer"] = std::move(a);
  } else {
    j["answer"] = nullptr;
  }
  j["position"] = item.position;
  j["total"] = item.total;
  return j;
}

Json to_json(const MetricsSnapshot& m) {
  Json j;
  j["version"] = kFormatVersion;
  j["coverage"] = to_json(m.coverage);
  j["precision"] = m.precision ? to_json(*m.precision) : Json(nullptr);
  j["utility_breakdown"] = to_json(m.utility);
  j["gaps_count"] = m.gaps_count;
  j["live_labels"] = m.live_labels;
  j["disagreements"] = m.disagreements;
  return j;
}

}  // namespace autoq
