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

// autoq: command-line driver for the question generation workspace.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "autoq/pipeline.hpp"
#include "autoq/review.hpp"
#include "autoq/serialize.hpp"
#include "autoq/server.hpp"

namespace fs = std::filesystem;
using namespace autoq;

namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;

struct Overrides {
  std::optional<double> theta, tau;
  std::optional<std::size_t> topk, min_count, max_queries, budget;

  void apply(Config& cfg) const {
    if (theta) cfg.theta = *theta;
    if (tau) cfg.tau = *tau;
    if (topk) cfg.topk = *topk;
    if (min_count) cfg.min_count = *min_count;
    if (max_queries) cfg.max_queries = *max_queries;
    if (budget) cfg.budget = *budget;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate, prune, answer and review questions over text corpora"};
  app.require_subcommand(1);

  std::string ws_root = ".";
  std::string config_path;
  app.add_option("--workspace,-w", ws_root, "Workspace directory");
  app.add_option("--config,-c", config_path, "key=value config file");
  Overrides ov;

  std::string corpus_path, corpus_id;
  auto* ingest = app.add_subcommand("ingest", "Ingest a text or JSONL corpus");
  ingest->add_option("--corpus", corpus_path, "Corpus file")->required()->check(CLI::ExistingFile);
  ingest->add_option("--id", corpus_id, "Corpus id")->required();

  auto* objects = app.add_subcommand("objects", "Extract canonical objects");

  std::string techniques = "all";
  auto* generate = app.add_subcommand("generate", "Generate queries");
  generate->add_option("--techniques", techniques, "all or object,pair,comparative,analogy,correlation");
  generate->add_option("--max-queries", ov.max_queries, "Cap on generated queries");

  auto* prune = app.add_subcommand("prune", "Apply pruning rules");
  prune->add_option("--theta", ov.theta, "Confidence threshold")->check(CLI::Range(0.0, 1.0));

  auto* answer = app.add_subcommand("answer", "Answer live queries against the corpora");
  answer->add_option("--theta", ov.theta, "Confidence threshold")->check(CLI::Range(0.0, 1.0));
  answer->add_option("--topk", ov.topk, "Candidates kept per query");
  answer->add_option("--min-count", ov.min_count, "Minimum mentions for the co-occurrence model");

  std::string which;
  auto* metrics = app.add_subcommand("metrics", "Coverage, precision or utility report");
  metrics->add_option("which", which, "coverage|precision|utility")
      ->required()
      ->check(CLI::IsMember({"coverage", "precision", "utility"}));
  metrics->add_option("--theta", ov.theta, "Confidence threshold")->check(CLI::Range(0.0, 1.0));

  auto* gaps = app.add_subcommand("gaps", "Report low-confidence queries");
  gaps->add_option("--theta", ov.theta, "Confidence threshold")->check(CLI::Range(0.0, 1.0));

  auto* pair = app.add_subcommand("pair", "Score corpus pairs and group corpora");
  pair->add_option("--tau", ov.tau, "Grouping threshold")->check(CLI::Range(0.0, 1.0));
  pair->add_option("--budget", ov.budget, "Cross queries per pair")->check(CLI::PositiveNumber);
  pair->add_option("--theta", ov.theta, "Confidence threshold")->check(CLI::Range(0.0, 1.0));

  std::size_t sample_n = 0;
  std::uint64_t seed = 0;
  bool stratify = false;
  auto* sample = app.add_subcommand("sample", "Draw a review sample");
  sample->add_option("--n", sample_n, "Sample size")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "Random seed");
  sample->add_flag("--stratify", stratify, "Allocate proportionally across query kinds");

  int port = 8080;
  std::string host = "127.0.0.1", static_dir;
  auto* serve = app.add_subcommand("serve", "Serve the review API");
  serve->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--workspace", ws_root, "Workspace directory");
  serve->add_option("--static", static_dir, "Review UI assets")->check(CLI::ExistingDirectory);

  std::string csv;
  auto* import = app.add_subcommand("import-labels", "Append labels from CSV");
  import->add_option("--csv", csv, "CSV file")->required()->check(CLI::ExistingFile);

  auto* run = app.add_subcommand("run", "objects through sample in one go");
  run->add_option("--n", sample_n, "Sample size");
  run->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const Workspace ws = Workspace::open(ws_root);
    Config cfg = config_path.empty() ? ws.load_config() : Config::load(config_path);
    ov.apply(cfg);
    const Resources res = ws.load_resources(cfg);

    if (*ingest) {
      const auto c = stage_ingest(ws, res, corpus_path, corpus_id);
      std::cout << c.corpus_id << ": " << c.documents.size() << " documents, "
                << c.sentence_count() << " sentences\n";
    } else if (*objects) {
      const auto t = stage_objects(ws, res);
      std::cout << t.objects.size() << " objects, " << t.mentions.size() << " mentions\n";
    } else if (*generate) {
      const auto r = stage_generate(ws, res, parse_techniques(techniques), cfg.max_queries);
      std::cout << r.queries.size() << " queries";
      if (r.truncated) std::cout << " (truncated from " << r.enumerated << ")";
      std::cout << "\n";
    } else if (*prune) {
      const auto s = stage_prune(ws, res, cfg.theta);
      std::cout << s.rule_pruned << " rule-pruned, " << s.nonsense << " nonsense, "
                << s.answered << " answered\n";
    } else if (*answer) {
      const auto s = stage_answer(ws, res, cfg.theta, cfg.topk, cfg.min_count);
      std::cout << s.attempted << " attempted, " << s.answered << " answered, " << s.nonsense
                << " nonsense, " << s.extensions << " analogy follow-ups\n";
    } else if (*metrics) {
      if (which == "coverage") {
        std::cout << format_coverage(stage_coverage(ws, cfg.theta));
      } else if (which == "precision") {
        std::cout << format_precision(stage_precision(ws));
      } else {
        std::cout << format_utility(stage_utility(ws));
      }
    } else if (*gaps) {
      std::cout << format_gaps(stage_gaps(ws, cfg.theta));
    } else if (*pair) {
      const auto out = stage_pair(ws, res, cfg.theta, cfg.tau, cfg.budget);
      std::cout << pair_scores_tsv(out.scores) << dump(groups_json(out.groups));
    } else if (*sample) {
      const auto s = stage_sample(ws, sample_n, seed, stratify);
      std::cout << s.query_ids.size() << " queries sampled";
      if (s.truncated) std::cout << " (fewer than requested)";
      std::cout << "\n";
    } else if (*import) {
      std::cout << stage_import_labels(ws, csv) << " labels imported\n";
    } else if (*run) {
      run_pipeline(ws, cfg, res, sample_n == 0 ? 20 : sample_n, seed);
      std::cout << "pipeline complete\n";
    } else if (*serve) {
      ReviewService svc(ReviewData::load(ws, cfg, res), ws.labels_file());
      ServerOptions opts;
      if (!static_dir.empty()) opts.static_dir = static_dir;
      auto server = make_server(svc, opts);
      const int bound = port == 0 ? server->bind_to_any_port(host) : port;
      if (port != 0 && !server->bind_to_port(host, port)) {
        std::cerr << "error: cannot bind " << host << ":" << port << "\n";
        return kData;
      }
      std::cout << "listening on " << host << ":" << bound << std::endl;
      server->listen_after_bind();
    }
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return 0;
}
