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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "autoq/metrics.hpp"
#include "autoq/pairing.hpp"
#include "autoq/querygen.hpp"
#include "autoq/workspace.hpp"

namespace autoq {

// Stages read and write only inside the workspace. Each rewrites its
// outputs whole, so re-running with unchanged inputs is byte-identical;
// the nonsense history log is the one append-only exception.

Corpus stage_ingest(const Workspace& ws, const Resources& res,
                    const std::filesystem::path& source, const std::string& corpus_id);

ObjectTable stage_objects(const Workspace& ws, const Resources& res);

GenerationResult stage_generate(const Workspace& ws, const Resources& res,
                                unsigned techniques, std::size_t max_queries);

struct PruneSummary {
  std::size_t rule_pruned = 0;
  std::size_t nonsense = 0;
  std::size_t answered = 0;
};

// Rule pruning from scratch; when answers exist, also re-applies the
// confidence check at `theta`.
PruneSummary stage_prune(const Workspace& ws, const Resources& res, double theta);

struct AnswerSummary {
  std::size_t attempted = 0;
  std::size_t answered = 0;
  std::size_t nonsense = 0;
  std::size_t extensions = 0;
};

AnswerSummary stage_answer(const Workspace& ws, const Resources& res, double theta,
                           std::size_t topk, std::size_t min_count);

CoverageReport stage_coverage(const Workspace& ws, double theta);
std::optional<PrecisionEstimate> stage_precision(const Workspace& ws);
UtilityBreakdown stage_utility(const Workspace& ws);
std::vector<GapRecord> stage_gaps(const Workspace& ws, double theta);

struct PairingOutput {
  std::vector<PairScore> scores;
  std::vector<std::vector<std::string>> groups;
};

PairingOutput stage_pair(const Workspace& ws, const Resources& res, double theta,
                         double tau, std::size_t budget);

Sample stage_sample(const Workspace& ws, std::size_t n, std::uint64_t seed, bool stratify);

// Appends CSV labels to the label log; returns the number imported.
std::size_t stage_import_labels(const Workspace& ws, const std::filesystem::path& csv);

// objects through sample with the given config.
void run_pipeline(const Workspace& ws, const Config& cfg, const Resources& res,
                  std::size_t sample_n, std::uint64_t seed);

}  // namespace autoq
