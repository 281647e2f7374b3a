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

#include "autoq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <unordered_map>

namespace autoq {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kUsefulInteresting: return "UsefulInteresting";
    case Category::kUsefulNotInteresting: return "UsefulNotInteresting";
    case Category::kNonsensical: return "Nonsensical";
  }
  return "?";
}

Category parse_category(std::string_view s) {
  for (auto c : kAllCategories) {
    if (to_string(c) == s) return c;
  }
  throw DataError("unknown category '" + std::string(s) + "'");
}

std::vector<Label> live_labels(std::span<const Label> log) {
  std::map<std::pair<std::string, std::string>, const Label*> last;
  for (const auto& l : log) last[{l.query_id, l.reviewer}] = &l;
  std::vector<Label> out;
  out.reserve(last.size());
  for (const auto& [_, l] : last) out.push_back(*l);
  return out;
}

namespace {

std::unordered_map<std::string, double> top_by_query(std::span<const AnswerRecord> answers) {
  std::unordered_map<std::string, double> top;
  top.reserve(answers.size());
  for (const auto& a : answers) {
    if (a.candidates.empty()) continue;
    auto [it, fresh] = top.emplace(a.query_id, a.top_confidence());
    if (!fresh) it->second = std::max(it->second, a.top_confidence());
  }
  return top;
}

// A query without candidates is unanswered at every threshold, including 0.
bool reaches(const std::unordered_map<std::string, double>& top, const std::string& id,
             double theta) {
  auto it = top.find(id);
  return it != top.end() && it->second >= theta;
}

double lookup(const std::unordered_map<std::string, double>& top, const std::string& id) {
  auto it = top.find(id);
  return it == top.end() ? 0.0 : it->second;
}

double ratio(std::size_t a, std::size_t b) {
  return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

// Uniform in [0, n) without modulo bias; std distributions are not
// portable across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[bounded(rng, i)]);
  }
}

}  // namespace

CoverageReport coverage(std::span<const Query> queries,
                        std::span<const AnswerRecord> answers, double theta) {
  const auto top = top_by_query(answers);
  CoverageReport r;
  for (auto k : kAllQueryKinds) r.per_kind.push_back({k});
  for (const auto& q : queries) {
    if (q.state == QueryState::kPruned) continue;
    auto& row = r.per_kind[static_cast<std::size_t>(q.kind)];
    ++row.total;
    ++r.total_queries;
    if (reaches(top, q.query_id, theta)) {
      ++row.answered;
      ++r.answered_high_conf;
    }
  }
  for (auto& row : r.per_kind) row.coverage = ratio(row.answered, row.total);
  r.coverage = ratio(r.answered_high_conf, r.total_queries);
  r.no_live_queries = r.total_queries == 0;
  return r;
}

PrecisionEstimate wilson_interval(std::size_t attempted, std::size_t correct, double z) {
  if (attempted == 0) throw PreconditionError("precision needs at least one attempt");
  if (correct > attempted) throw PreconditionError("correct exceeds attempted");
  PrecisionEstimate p;
  p.attempted = attempted;
  p.correct = correct;
  p.z = z;
  const double n = static_cast<double>(attempted);
  const double ph = static_cast<double>(correct) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (ph + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
  p.point = ph;
  p.lo = std::clamp(std::min(center - half, ph), 0.0, 1.0);
  p.hi = std::clamp(std::max(center + half, ph), 0.0, 1.0);
  return p;
}

PrecisionEstimate precision_with_interval(std::span<const Label> labels, double z) {
  std::size_t attempted = 0, correct = 0;
  for (const auto& l : live_labels(labels)) {
    if (!l.answer_correct) continue;
    ++attempted;
    if (*l.answer_correct) ++correct;
  }
  return wilson_interval(attempted, correct, z);
}

std::vector<std::size_t> largest_remainder(std::span<const std::size_t> sizes,
                                           std::size_t n) {
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  std::vector<std::size_t> alloc(sizes.size(), 0);
  if (total == 0) return alloc;
  n = std::min(n, total);
  // Exact integer arithmetic: quota_i = n*s_i/total = floor + rem/total.
  std::vector<std::size_t> rem(sizes.size());
  std::size_t given = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    alloc[i] = n * sizes[i] / total;
    rem[i] = n * sizes[i] % total;
    given += alloc[i];
  }
  std::vector<std::size_t> order(sizes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t i = 0; given < n && i < order.size(); ++i) {
    if (alloc[order[i]] < sizes[order[i]]) {
      ++alloc[order[i]];
      ++given;
    }
  }
  return alloc;
}

Sample sample_for_review(std::span<const Query> queries, std::size_t n,
                         std::uint64_t seed, bool stratify_by_kind) {
  if (n == 0) throw PreconditionError("sample size must be at least 1");
  std::vector<const Query*> live;
  for (const auto& q : queries) {
    if (q.state != QueryState::kPruned) live.push_back(&q);
  }
  std::sort(live.begin(), live.end(),
            [](const Query* a, const Query* b) { return a->query_id < b->query_id; });

  Sample s;
  s.seed = seed;
  s.stratified = stratify_by_kind;
  std::mt19937_64 rng(seed);
  std::vector<const Query*> picked;
  if (n >= live.size()) {
    s.truncated = n > live.size();
    picked = live;
  } else if (!stratify_by_kind) {
    shuffle(live, rng);
    picked.assign(live.begin(), live.begin() + static_cast<std::ptrdiff_t>(n));
  } else {
    std::vector<std::vector<const Query*>> strata(kAllQueryKinds.size());
    for (const auto* q : live) strata[static_cast<std::size_t>(q->kind)].push_back(q);
    std::vector<std::size_t> sizes;
    for (const auto& st : strata) sizes.push_back(st.size());
    const auto alloc = largest_remainder(sizes, n);
    for (std::size_t k = 0; k < strata.size(); ++k) {
      shuffle(strata[k], rng);
      picked.insert(picked.end(), strata[k].begin(),
                    strata[k].begin() + static_cast<std::ptrdiff_t>(alloc[k]));
    }
    shuffle(picked, rng);
  }
  for (const auto* q : picked) s.query_ids.push_back(q->query_id);
  return s;
}

UtilityBreakdown utility_breakdown(std::span<const Label> labels) {
  UtilityBreakdown u;
  for (const auto& l : live_labels(labels)) {
    ++u.counts[static_cast<std::size_t>(l.category)];
    ++u.labeled;
  }
  for (std::size_t i = 0; i < 3; ++i) u.fractions[i] = ratio(u.counts[i], u.labeled);
  return u;
}

std::vector<GapRecord> gap_report(std::span<const Query> queries,
                                  std::span<const AnswerRecord> answers,
                                  const ObjectTable& objects, double theta) {
  const auto top = top_by_query(answers);
  std::vector<GapRecord> gaps;
  for (const auto& q : queries) {
    if (q.state == QueryState::kPruned) continue;
    if (reaches(top, q.query_id, theta)) continue;
    const double best = lookup(top, q.query_id);
    GapRecord g;
    g.query_id = q.query_id;
    g.surface = q.surface;
    g.kind = q.kind;
    g.best_confidence = best;
    g.subjects.push_back(objects.at(q.subject).canonical);
    if (q.object2) g.subjects.push_back(objects.at(*q.object2).canonical);
    gaps.push_back(std::move(g));
  }
  std::sort(gaps.begin(), gaps.end(), [](const GapRecord& a, const GapRecord& b) {
    if (a.subjects != b.subjects) return a.subjects < b.subjects;
    if (a.best_confidence != b.best_confidence) return a.best_confidence < b.best_confidence;
    return a.query_id < b.query_id;
  });
  return gaps;
}

namespace {

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

}  // namespace

std::string format_coverage(const CoverageReport& r) {
  std::string out = fmt("%-20s %8s %8s %8s\n", "kind", "live", "answered", "coverage");
  for (const auto& row : r.per_kind) {
    out += fmt("%-20s %8zu %8zu %8.4f\n", std::string(to_string(row.kind)).c_str(),
               row.total, row.answered, row.coverage);
  }
  out += fmt("%-20s %8zu %8zu %8.4f\n", "total", r.total_queries, r.answered_high_conf,
             r.coverage);
  if (r.no_live_queries) out += "no live queries\n";
  return out;
}

std::string format_precision(const std::optional<PrecisionEstimate>& p) {
  if (!p) return "no attempted answers\n";
  std::string out = fmt("%-10s %8s %8s %8s %8s %6s\n", "attempted", "correct", "point", "lo",
                        "hi", "z");
  out += fmt("%-10zu %8zu %8.4f %8.4f %8.4f %6.2f\n", p->attempted, p->correct, p->point,
             p->lo, p->hi, p->z);
  return out;
}

std::string format_utility(const UtilityBreakdown& u) {
  if (u.empty()) return "no labels\n";
  std::string out = fmt("%-22s %6s %8s\n", "category", "count", "fraction");
  for (auto c : kAllCategories) {
    const auto i = static_cast<std::size_t>(c);
    out += fmt("%-22s %6zu %8.4f\n", std::string(to_string(c)).c_str(), u.counts[i],
               u.fractions[i]);
  }
  return out;
}

std::string format_gaps(std::span<const GapRecord> gaps) {
  std::string out = fmt("%-16s %6s  %s\n", "query_id", "conf", "surface");
  for (const auto& g : gaps) {
    out += fmt("%-16s %6.4f  ", g.query_id.c_str(), g.best_confidence);
    out += g.surface;
    out += '\n';
  }
  return out;
}

}  // namespace autoq
