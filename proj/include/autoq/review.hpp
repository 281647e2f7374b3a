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
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "autoq/metrics.hpp"
#include "autoq/serialize.hpp"
#include "autoq/workspace.hpp"

namespace autoq {

struct ReviewEvidence {
  std::optional<SentId> sent_id;
  std::string text;  // sentence text, or the answer object's display form
  double confidence = 0.0;
  std::vector<std::string> matched;
};

struct ReviewItem {
  std::string query_id;
  std::string surface;
  QueryKind kind = QueryKind::kObjectJournalism;
  QueryState state = QueryState::kGenerated;
  std::string prune_reason;
  std::optional<ReviewEvidence> answer;
  std::size_t position = 0;  // 0-based index in the sample
  std::size_t total = 0;
};

struct MetricsSnapshot {
  CoverageReport coverage;
  std::optional<PrecisionEstimate> precision;
  UtilityBreakdown utility;
  std::size_t gaps_count = 0;
  std::size_t live_labels = 0;
  // Live labels calling a rule-kept query Nonsensical.
  std::size_t disagreements = 0;
};

// Everything the service reads, loaded once.
struct ReviewData {
  std::vector<Query> queries;
  std::vector<AnswerRecord> answers;
  std::optional<Sample> sample;
  std::unordered_map<std::string, std::string> sentence_text;  // SentId::str()
  std::unordered_map<std::string, std::string> object_display;
  double theta = 0.35;

  static ReviewData load(const Workspace& ws, const Config& cfg, const Resources& res);
};

// Review queue and label log over a fixed snapshot. Labels are the only
// mutation; each is appended to the log before it becomes visible.
class ReviewService {
 public:
  // Replays any labels already in `label_log`.
  ReviewService(ReviewData data, std::filesystem::path label_log);

  // First unlabeled sample item for this reviewer. Throws
  // PreconditionError when no sample has been prepared.
  std::optional<ReviewItem> next_review_item(const std::string& reviewer) const;

  bool in_sample(const std::string& query_id) const;

  // Validates, stamps ts, appends to the log and applies. Throws DataError
  // for query ids outside the sample or an empty reviewer.
  MetricsSnapshot submit_label(Label label);

  MetricsSnapshot metrics() const;
  std::vector<Label> labels() const;

  struct Page {
    std::vector<const Query*> items;
    std::size_t total = 0;
    std::size_t page = 0;
    std::size_t page_size = 0;
  };
  Page queries(std::optional<QueryState> state, std::optional<QueryKind> kind,
               std::size_t page, std::size_t page_size = 50) const;

  const ReviewData& data() const { return data_; }

 private:
  MetricsSnapshot compute_locked() const;

  ReviewData data_;
  std::filesystem::path log_path_;
  std::unordered_map<std::string, const Query*> by_id_;
  std::unordered_map<std::string, const AnswerRecord*> answer_by_id_;
  std::unordered_map<std::string, std::size_t> sample_pos_;
  CoverageReport coverage_;

  mutable std::shared_mutex mu_;
  std::vector<Label> log_;
  // Per reviewer, which sample positions carry a live label.
  std::map<std::string, std::vector<bool>> labeled_;
  std::int64_t last_ts_ = 0;
};

// Metrics from a label log alone, as the service would report them.
MetricsSnapshot replay_metrics(const ReviewData& data, std::span<const Label> log);

Json to_json(const ReviewItem& item);
Json to_json(const MetricsSnapshot& m);

}  // namespace autoq
