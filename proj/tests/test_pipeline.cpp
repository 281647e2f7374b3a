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

#include <sys/wait.h>

#include <chrono>
#include <fstream>
#include <map>

#include "fixtures.hpp"
#include "autoq/pipeline.hpp"
#include "autoq/serialize.hpp"

using namespace autoq;
using namespace autoq::test;
namespace fs = std::filesystem;

namespace {

// Every file under the workspace except the append-only history log.
std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file() || e.path().filename() == "history.jsonl") continue;
    out[fs::relative(e.path(), root).string()] = read_file(e.path());
  }
  return out;
}

struct Fixture {
  Workspace ws;
  Resources res;
};

Fixture fixture_workspace(const fs::path& root) {
  const auto ws = Workspace::open(root);
  Fixture f{ws, ws.load_resources(Config{})};
  stage_ingest(ws, f.res, data_file("civil_war.txt"), "civil_war");
  stage_ingest(ws, f.res, data_file("oil.jsonl"), "oil");
  stage_ingest(ws, f.res, data_file("poetry.txt"), "poetry");
  return f;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(AUTOQ_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("full pipeline is idempotent") {
  TempDir dir;
  const auto fx = fixture_workspace(dir.path() / "ws");
  const auto& ws = fx.ws;
  const auto* res = &fx.res;
  const Config cfg;
  const auto t0 = std::chrono::steady_clock::now();
  run_pipeline(ws, cfg, *res, 20, 7);
  const auto first = snapshot(ws.root());
  run_pipeline(ws, cfg, *res, 20, 7);
  const auto second = snapshot(ws.root());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 30.0);

  REQUIRE(first.size() == second.size());
  for (const auto& [name, content] : first) {
    INFO(name);
    CHECK(second.at(name) == content);
  }
  for (const char* f : {"reports/coverage.json", "reports/gaps.json", "reports/pair_scores.tsv",
                        "reports/groups.json", "labels/sample.json", "queries/queries.jsonl",
                        "answers/answers.jsonl", "objects/objects.jsonl"}) {
    CHECK(first.count(f) == 1);
  }
  CHECK(first.at("reports/pair_scores.tsv").rfind("# version 1\n", 0) == 0);
  CHECK(first.at("reports/coverage.txt").rfind("# version 1\n", 0) == 0);

  // A second workspace built from scratch matches byte for byte.
  const auto fx2 = fixture_workspace(dir.path() / "ws2");
  run_pipeline(fx2.ws, cfg, fx2.res, 20, 7);
  CHECK(snapshot(fx2.ws.root()) == first);

  const auto sample = sample_from_json(Json::parse(first.at("labels/sample.json")));
  CHECK(sample.query_ids.size() == 20);
  CHECK(sample.stratified);
  CHECK(NonsenseHistory::load(ws.history_file()).last_ts() >= 2);
}

TEST_CASE("stages in sequence") {
  TempDir dir;
  const auto fx = fixture_workspace(dir.path() / "ws");
  const auto& ws = fx.ws;
  const auto* res = &fx.res;
  CHECK_THROWS_AS(stage_generate(ws, *res, kTechAll, 100), DataError);
  const auto objects = stage_objects(ws, *res);
  CHECK(objects.objects.size() > 50);
  const auto gen = stage_generate(ws, *res, kTechObject | kTechAnalogy, 100000);
  CHECK(gen.queries.size() == objects.objects.size() * 7);
  const auto pr = stage_prune(ws, *res, 0.35);
  CHECK(pr.rule_pruned > 0);
  CHECK(pr.answered + pr.nonsense == 0);
  const auto ans = stage_answer(ws, *res, 0.35, 5, 2);
  CHECK(ans.attempted == ans.answered + ans.nonsense);
  CHECK(ans.answered > 0);
  // Re-pruning at a stricter threshold only moves queries to Nonsense.
  const auto strict = stage_prune(ws, *res, 0.9);
  CHECK(strict.rule_pruned == pr.rule_pruned);
  CHECK(strict.answered <= ans.answered);
  const auto cov = stage_coverage(ws, 0.9);
  CHECK(cov.answered_high_conf == strict.answered);
  const auto gaps = stage_gaps(ws, 0.9);
  CHECK(gaps.size() == cov.total_queries - cov.answered_high_conf);
  CHECK_FALSE(stage_precision(ws).has_value());
  CHECK(stage_utility(ws).empty());
}

TEST_CASE("cli exit codes") {
  TempDir dir;
  const auto ws = (dir.path() / "ws").string();
  const auto bad = dir.path() / "bad.jsonl";
  std::ofstream(bad) << "{\"doc_id\":\"a\"}\n";
  const auto conf = dir.path() / "bad.conf";
  std::ofstream(conf) << "colour=blue\n";
  const auto labels = dir.path() / "labels.csv";
  std::ofstream(labels) << "query_id,category,reviewer\nq1,UsefulInteresting,ann\n";

  CHECK(run_cli("") == 1);
  CHECK(run_cli("-w " + ws + " bogus") == 1);
  CHECK(run_cli("-w " + ws + " ingest --corpus /nonexistent.txt --id x") == 1);
  CHECK(run_cli("-w " + ws + " ingest --corpus " + bad.string() + " --id x") == 2);
  CHECK(run_cli("-w " + ws + " ingest --corpus " + data_file("poetry.txt").string() +
                " --id 'bad id'") == 2);
  CHECK(run_cli("-w " + ws + " generate") == 2);
  CHECK(run_cli("-w " + ws + " -c " + conf.string() + " objects") == 2);
  CHECK(run_cli("-w " + ws + " prune --theta 1.5") == 1);
  CHECK(run_cli("-w " + ws + " ingest --corpus " + data_file("poetry.txt").string() +
                " --id poetry") == 0);
  CHECK(run_cli("-w " + ws + " objects") == 0);
  CHECK(run_cli("-w " + ws + " sample --n 5") == 2);
  CHECK(run_cli("-w " + ws + " generate --techniques object,analogy") == 0);
  CHECK(run_cli("-w " + ws + " generate --techniques nope") == 2);
  CHECK(run_cli("-w " + ws + " prune") == 0);
  CHECK(run_cli("-w " + ws + " answer") == 0);
  CHECK(run_cli("-w " + ws + " metrics coverage") == 0);
  CHECK(run_cli("-w " + ws + " metrics speed") == 1);
  CHECK(run_cli("-w " + ws + " gaps --theta 0.5") == 0);
  CHECK(run_cli("-w " + ws + " sample --n 5 --seed 3 --stratify") == 0);
  CHECK(run_cli("-w " + ws + " import-labels --csv " + labels.string()) == 0);
  CHECK(run_cli("-w " + ws + " metrics utility") == 0);
  CHECK(read_labels(fs::path(ws) / "labels" / "labels.jsonl").size() == 1);
}
