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

#include <doctest.h>

#include "review_fixture.hpp"

using namespace autoq;
using namespace autoq::test;

namespace {

Label lbl(const std::string& id, Category c, std::optional<bool> ok, const std::string& who) {
  return Label{id, c, ok, who, 0};
}

}  // namespace

TEST_CASE("queue serves sample items in order") {
  TempDir dir;
  const auto data = grant_review_data();
  const auto& ids = data.sample->query_ids;
  REQUIRE(ids.size() == 5);
  ReviewService svc(data, dir.path() / "labels.jsonl");
  const auto first = svc.next_review_item("ann");
  REQUIRE(first);
  CHECK(first->query_id == ids[0]);
  CHECK(first->position == 0);
  CHECK(first->total == 5);
  REQUIRE(first->answer);
  CHECK(first->answer->text == "General Grant was in the US Civil War");
  CHECK(first->answer->confidence > 0.0);

  svc.submit_label(lbl(ids[0], Category::kUsefulInteresting, true, "ann"));
  CHECK(svc.next_review_item("ann")->query_id == ids[1]);
  // Another reviewer still starts at the top.
  CHECK(svc.next_review_item("bob")->query_id == ids[0]);
  for (std::size_t i = 1; i < ids.size(); ++i) {
    svc.submit_label(lbl(ids[i], Category::kUsefulNotInteresting, false, "ann"));
  }
  CHECK_FALSE(svc.next_review_item("ann").has_value());
}

TEST_CASE("labels replace per reviewer and feed metrics") {
  TempDir dir;
  const auto data = grant_review_data();
  const auto& ids = data.sample->query_ids;
  ReviewService svc(data, dir.path() / "labels.jsonl");
  auto m = svc.metrics();
  CHECK(m.live_labels == 0);
  CHECK_FALSE(m.precision.has_value());

  m = svc.submit_label(lbl(ids[0], Category::kUsefulInteresting, false, "ann"));
  CHECK(m.precision->attempted == 1);
  CHECK(m.precision->correct == 0);
  m = svc.submit_label(lbl(ids[0], Category::kUsefulInteresting, true, "ann"));
  CHECK(m.live_labels == 1);
  CHECK(m.precision->correct == 1);
  m = svc.submit_label(lbl(ids[0], Category::kNonsensical, std::nullopt, "bob"));
  CHECK(m.live_labels == 2);
  CHECK(m.disagreements == 1);  // bob calls a rule-kept query nonsensical
  CHECK(m.utility.counts[2] == 1);

  const auto log = svc.labels();
  REQUIRE(log.size() == 3);
  CHECK(log[0].ts == 1);
  CHECK(log[2].ts == 3);
  CHECK(m.gaps_count + m.coverage.answered_high_conf == m.coverage.total_queries);
}

TEST_CASE("validation") {
  TempDir dir;
  const auto data = grant_review_data();
  ReviewService svc(data, dir.path() / "labels.jsonl");
  CHECK_THROWS_AS(svc.submit_label(lbl("not-there", Category::kNonsensical, {}, "ann")), DataError);
  CHECK_THROWS_AS(svc.submit_label(lbl(data.sample->query_ids[0], Category::kNonsensical, {}, "")),
                  DataError);
  CHECK(svc.labels().empty());

  auto no_sample = data;
  no_sample.sample.reset();
  ReviewService bare(no_sample, dir.path() / "other.jsonl");
  CHECK_THROWS_AS(bare.next_review_item("ann"), PreconditionError);
}

TEST_CASE("replaying the log reproduces metrics") {
  TempDir dir;
  const auto data = grant_review_data();
  const auto& ids = data.sample->query_ids;
  const auto log_path = dir.path() / "labels.jsonl";
  std::string before;
  {
    ReviewService svc(data, log_path);
    svc.submit_label(lbl(ids[0], Category::kUsefulInteresting, true, "ann"));
    svc.submit_label(lbl(ids[1], Category::kNonsensical, std::nullopt, "ann"));
    svc.submit_label(lbl(ids[0], Category::kUsefulNotInteresting, false, "bob"));
    svc.submit_label(lbl(ids[2], Category::kUsefulInteresting, true, "bob"));
    svc.submit_label(lbl(ids[0], Category::kUsefulInteresting, true, "bob"));
    before = dump(to_json(svc.metrics()));
  }
  ReviewService reopened(data, log_path);
  CHECK(dump(to_json(reopened.metrics())) == before);
  const auto log = read_labels(log_path);
  CHECK(dump(to_json(replay_metrics(data, log))) == before);
  CHECK(reopened.next_review_item("ann")->query_id == ids[2]);
  // New labels continue the timestamp sequence.
  reopened.submit_label(lbl(ids[3], Category::kUsefulInteresting, true, "ann"));
  CHECK(reopened.labels().back().ts == 6);
}

TEST_CASE("query paging") {
  TempDir dir;
  ReviewService svc(grant_review_data(), dir.path() / "labels.jsonl");
  const auto all = svc.queries(std::nullopt, std::nullopt, 0, 5);
  CHECK(all.total == 12);
  CHECK(all.items.size() == 5);
  CHECK(svc.queries(std::nullopt, std::nullopt, 2, 5).items.size() == 2);
  CHECK(svc.queries(QueryState::kPruned, std::nullopt, 0).total == 4);
  CHECK(svc.queries(std::nullopt, QueryKind::kAnalogy, 0).total == 0);
}
