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
#include <memory>
#include <optional>

#include <httplib.h>

#include "autoq/review.hpp"

namespace autoq {

struct ServerOptions {
  // Static assets for the review UI, mounted at "/".
  std::optional<std::filesystem::path> static_dir;
};

// Routes:
//   GET  /api/review/next?reviewer=R   item, or 204 when the queue is done
//   POST /api/review/label             {query_id, category, answer_correct?, reviewer}
//   GET  /api/metrics
//   GET  /api/queries?state=&kind=&page=
// JSON bodies carry "version": 1; errors are {"version", "error"} with
// 400 for malformed input, 404 for unknown queries, 409 without a sample.
std::unique_ptr<httplib::Server> make_server(ReviewService& svc,
                                             const ServerOptions& opts = {});

}  // namespace autoq
