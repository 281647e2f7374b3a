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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autoq/answer.hpp"
#include "autoq/objects.hpp"
#include "autoq/querygen.hpp"

namespace autoq {

enum class Category { kUsefulInteresting, kUsefulNotInteresting, kNonsensical };

inline constexpr std::array<Category, 3> kAllCategories = {
    Category::kUsefulInteresting, Category::kUsefulNotInteresting,
    Category::kNonsensical};

std::string_view to_string(Category c);
Category parse_category(std::string_view s);

struct Label {
  std::string query_id;
  Category category = Category::kUsefulInteresting;
  // Set only when a candidate answer was shown to the reviewer.
  std::optional<bool> answer_correct;
  std::string reviewer;
  std::int64_t ts = 0;
};

// Last label per (query_id, reviewer) in log order, sorted by that key.
std::vector<Label> live_labels(std::span<const Label> log);

struct KindCoverage {
  QueryKind kind;
  std::size_t total = 0;
  std::size_t answered = 0;
  double coverage = 0.0;
};

struct CoverageReport {
  std::size_t total_queries = 0;  // non-pruned
  std::size_t answered_high_conf = 0;
  double coverage = 0.0;
  bool no_live_queries = false;
  std::vector<KindCoverage> per_kind;  // one row per kind, enum order
};

CoverageReport coverage(std::span<const Query> queries,
                        std::span<const AnswerRecord> answers, double theta);

struct PrecisionEstimate {
  std::size_t attempted = 0;
  std::size_t correct = 0;
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double z = 1.96;
};

// Wilson score interval. Throws PreconditionError when attempted == 0.
PrecisionEstimate wilson_interval(std::size_t attempted, std::size_t correct,
                                  double z = 1.96);

// Over live labels with answer_correct set.
PrecisionEstimate precision_with_interval(std::span<const Label> labels,
                                          double z = 1.96);

// Proportional allocation of n across strata, rounding by largest
// remainder; ties go to the earlier stratum.
std::vector<std::size_t> largest_remainder(std::span<const std::size_t> sizes,
                                           std::size_t n);

struct Sample {
  std::vector<std::string> query_ids;
  bool truncated = false;  // n exceeded the live population
  std::uint64_t seed = 0;
  bool stratified = false;
};

// Throws PreconditionError when n == 0.
Sample sample_for_review(std::span<const Query> queries, std::size_t n,
                         std::uint64_t seed, bool stratify_by_kind);

struct UtilityBreakdown {
  std::size_t labeled = 0;
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> fractions{};

  bool empty() const { return labeled == 0; }
};

UtilityBreakdown utility_breakdown(std::span<const Label> labels);

struct GapRecord {
  std::string query_id;
  std::string surface;
  QueryKind kind = QueryKind::kObjectJournalism;
  double best_confidence = 0.0;
  std::vector<std::string> subjects;  // canonical forms
};

// Non-pruned queries whose top confidence is below theta, sorted by
// subject canonical form, then confidence ascending.
std::vector<GapRecord> gap_report(std::span<const Query> queries,
                                  std::span<const AnswerRecord> answers,
                                  const ObjectTable& objects, double theta);

// Aligned-column plain text renderings.
std::string format_coverage(const CoverageReport& r);
std::string format_precision(const std::optional<PrecisionEstimate>& p);
std::string format_utility(const UtilityBreakdown& u);
std::string format_gaps(std::span<const GapRecord> gaps);

}  // namespace autoq
