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

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "autoq/answer.hpp"
#include "autoq/ingest.hpp"
#include "autoq/metrics.hpp"
#include "autoq/objects.hpp"
#include "autoq/pairing.hpp"
#include "autoq/querygen.hpp"

namespace autoq {

inline constexpr int kFormatVersion = 1;

using Json = nlohmann::ordered_json;

// Writes through a temporary file and renames it into place.
void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// Calls `fn` for every non-blank line; parse failures, missing fields and
// version mismatches become DataError with path and line number.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const Json&)>& fn);
void check_version(const Json& j);

Json to_json(const CanonicalObject& o);
CanonicalObject object_from_json(const Json& j);

// objects.jsonl and mentions.jsonl under `dir`.
void write_objects(const std::filesystem::path& dir, const ObjectTable& table);
ObjectTable read_objects(const std::filesystem::path& dir);

// Raw documents only; sentences are rebuilt on load.
void write_corpus(const std::filesystem::path& path, const Corpus& corpus);
Corpus read_corpus(const std::filesystem::path& path, const Lexicon& lex);

Json to_json(const Query& q);
Query query_from_json(const Json& j);
void write_queries(const std::filesystem::path& path, std::span<const Query> queries);
std::vector<Query> read_queries(const std::filesystem::path& path);

Json to_json(const AnswerRecord& a);
AnswerRecord answer_from_json(const Json& j);
void write_answers(const std::filesystem::path& path,
                   std::span<const AnswerRecord> answers);
std::vector<AnswerRecord> read_answers(const std::filesystem::path& path);

Json to_json(const Label& l);
Label label_from_json(const Json& j);
std::vector<Label> read_labels(const std::filesystem::path& path);
void append_label(const std::filesystem::path& path, const Label& l);
// CSV with header query_id,category,answer_correct,reviewer,ts.
std::vector<Label> import_labels_csv(const std::filesystem::path& path);

Json to_json(const Sample& s);
Sample sample_from_json(const Json& j);

Json to_json(const CoverageReport& r);
Json to_json(const PrecisionEstimate& p);
Json to_json(const UtilityBreakdown& u);
Json to_json(const GapRecord& g);
Json to_json(std::span<const GapRecord> gaps);

// corpus1<TAB>corpus2<TAB>generated<TAB>useful<TAB>u
std::string pair_scores_tsv(std::span<const PairScore> scores);
Json groups_json(const std::vector<std::vector<std::string>>& groups);

// Pretty JSON with a trailing newline.
std::string dump(const Json& j);

}  // namespace autoq
