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

#include "autoq/server.hpp"

#include <charconv>
#include <string>

namespace autoq {

namespace {

void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send(res, status, Json{{"version", kFormatVersion}, {"error", message}});
}

std::size_t parse_page(const std::string& s) {
  std::size_t n = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw DataError("bad page '" + s + "'");
  }
  return n;
}

Label parse_label(const std::string& body) {
  Json j;
  try {
    j = Json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("label body must be an object");
  try {
    Label l;
    l.query_id = j.at("query_id").get<std::string>();
    l.category = parse_category(j.at("category").get<std::string>());
    if (auto it = j.find("answer_correct"); it != j.end() && !it->is_null()) {
      l.answer_correct = it->get<bool>();
    }
    l.reviewer = j.at("reviewer").get<std::string>();
    return l;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad label: ") + e.what());
  }
}

}  // namespace

std::unique_ptr<httplib::Server> make_server(ReviewService& svc, const ServerOptions& opts) {
  auto server = std::make_unique<httplib::Server>();

  server->Get("/api/review/next", [&svc](const httplib::Request& req, httplib::Response& res) {
    const auto reviewer = req.get_param_value("reviewer");
    if (reviewer.empty()) return send_error(res, 400, "reviewer is required");
    try {
      auto item = svc.next_review_item(reviewer);
      if (!item) {
        res.status = 204;
        return;
      }
      send(res, 200, to_json(*item));
    } catch (const PreconditionError& e) {
      send_error(res, 409, e.what());
    }
  });

  server->Post("/api/review/label", [&svc](const httplib::Request& req, httplib::Response& res) {
    Label label;
    try {
      label = parse_label(req.body);
    } catch (const DataError& e) {
      return send_error(res, 400, e.what());
    }
    if (!svc.in_sample(label.query_id)) {
      return send_error(res, 404, "query " + label.query_id + " is not in the review sample");
    }
    try {
      const auto m = svc.submit_label(label);
      Json j;
      j["version"] = kFormatVersion;
      j["accepted"] = true;
      j["query_id"] = label.query_id;
      j["reviewer"] = label.reviewer;
      j["precision"] = m.precision ? to_json(*m.precision) : Json(nullptr);
      j["utility_breakdown"] = to_json(m.utility);
      j["live_labels"] = m.live_labels;
      j["disagreements"] = m.disagreements;
      send(res, 200, j);
    } catch (const DataError& e) {
      send_error(res, 400, e.what());
    }
  });

  server->Get("/api/metrics", [&svc](const httplib::Request&, httplib::Response& res) {
    send(res, 200, to_json(svc.metrics()));
  });

  server->Get("/api/queries", [&svc](const httplib::Request& req, httplib::Response& res) {
    try {
      std::optional<QueryState> state;
      std::optional<QueryKind> kind;
      std::size_t page = 0;
      if (auto s = req.get_param_value("state"); !s.empty()) state = parse_query_state(s);
      if (auto k = req.get_param_value("kind"); !k.empty()) kind = parse_query_kind(k);
      if (auto p = req.get_param_value("page"); !p.empty()) page = parse_page(p);
      const auto result = svc.queries(state, kind, page);
      Json j;
      j["version"] = kFormatVersion;
      j["page"] = result.page;
      j["page_size"] = result.page_size;
      j["total"] = result.total;
      Json items = Json::array();
      for (const auto* q : result.items) items.push_back(to_json(*q));
      j["items"] = std::move(items);
      send(res, 200, j);
    } catch (const DataError& e) {
      send_error(res, 400, e.what());
    }
  });

  if (opts.static_dir) server->set_mount_point("/", opts.static_dir->string());
  return server;
}

}  // namespace autoq
