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

#include "autoq/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace autoq {

namespace fs = std::filesystem;

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_version(const Json& j) {
  auto it = j.find("version");
  if (it == j.end()) throw DataError("missing version field");
  if (!it->is_number_integer() || it->get<int>() != kFormatVersion) {
    throw DataError("unsupported format version " + it->dump());
  }
}

void for_each_jsonl(const fs::path& path, const std::function<void(const Json&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const Json j = Json::parse(line);
      check_version(j);
      fn(j);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

namespace {

Json header() {
  Json j;
  j["version"] = kFormatVersion;
  return j;
}

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

std::string lines(std::span<const Json> rows) {
  std::string out;
  for (const auto& r : rows) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const CanonicalObject& o) {
  Json j = header();
  j["object_id"] = o.object_id;
  j["canonical"] = o.canonical;
  j["type"] = to_string(o.type);
  j["mention_count"] = o.mention_count;
  j["quantified"] = o.quantified;
  j["proper"] = o.proper;
  j["article"] = o.article;
  return j;
}

CanonicalObject object_from_json(const Json& j) {
  CanonicalObject o;
  o.object_id = j.at("object_id").get<std::string>();
  o.canonical = j.at("canonical").get<std::string>();
  o.type = parse_object_type(j.at("type").get<std::string>());
  o.mention_count = j.at("mention_count").get<std::size_t>();
  o.quantified = j.at("quantified").get<bool>();
  o.proper = j.value("proper", false);
  o.article = j.value("article", std::string());
  if (o.object_id != object_id_for(o.canonical)) {
    throw DataError("object_id does not match canonical form '" + o.canonical + "'");
  }
  return o;
}

void write_objects(const fs::path& dir, const ObjectTable& table) {
  std::vector<Json> rows;
  for (const auto& o : table.objects) rows.push_back(to_json(o));
  write_file(dir / "objects.jsonl", lines(rows));
  rows.clear();
  for (const auto& m : table.mentions) {
    Json j = header();
    j["sent_id"] = m.sent_id.str();
    j["first"] = m.chunk.first;
    j["last"] = m.chunk.last;
    j["surface"] = m.surface;
    j["object_id"] = table.objects.at(m.object_index).object_id;
    rows.push_back(std::move(j));
  }
  write_file(dir / "mentions.jsonl", lines(rows));
}

ObjectTable read_objects(const fs::path& dir) {
  ObjectTable t;
  for_each_jsonl(dir / "objects.jsonl",
                 [&](const Json& j) { t.objects.push_back(object_from_json(j)); });
  t.reindex();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < t.objects.size(); ++i) index[t.objects[i].object_id] = i;
  const auto mentions = dir / "mentions.jsonl";
  if (fs::exists(mentions)) {
    for_each_jsonl(mentions, [&](const Json& j) {
      ObjectMention m;
      m.sent_id = SentId::parse(j.at("sent_id").get<std::string>());
      m.chunk = {j.at("first").get<std::size_t>(), j.at("last").get<std::size_t>()};
      m.surface = j.at("surface").get<std::string>();
      const auto id = j.at("object_id").get<std::string>();
      auto it = index.find(id);
      if (it == index.end()) throw DataError("mention of unknown object " + id);
      m.object_index = it->second;
      t.mentions.push_back(std::move(m));
    });
  }
  return t;
}

void write_corpus(const fs::path& path, const Corpus& corpus) {
  std::vector<Json> rows;
  for (const auto& d : corpus.documents) {
    Json j = header();
    j["corpus_id"] = corpus.corpus_id;
    j["doc_id"] = d.doc_id;
    j["title"] = d.title;
    j["text"] = d.text;
    rows.push_back(std::move(j));
  }
  write_file(path, lines(rows));
}

Corpus read_corpus(const fs::path& path, const Lexicon& lex) {
  std::string id;
  std::vector<Document> docs;
  for_each_jsonl(path, [&](const Json& j) {
    const auto cid = j.at("corpus_id").get<std::string>();
    if (!id.empty() && cid != id) throw DataError("mixed corpus ids in one file");
    id = cid;
    Document d;
    d.doc_id = j.at("doc_id").get<std::string>();
    d.title = j.value("title", std::string());
    d.text = j.at("text").get<std::string>();
    docs.push_back(std::move(d));
  });
  if (docs.empty()) throw DataError(path.string() + ": empty corpus");
  return build_corpus(id, std::move(docs), lex);
}

Json to_json(const Query& q) {
  Json j = header();
  j["query_id"] = q.query_id;
  j["kind"] = to_string(q.kind);
  j["interrogative"] =
      q.interrogative ? Json(std::string(to_string(*q.interrogative))) : Json(nullptr);
  j["subject"] = q.subject;
  j["object2"] = opt(q.object2);
  j["verb"] = opt(q.verb);
  j["adjective"] = opt(q.adjective);
  j["surface"] = q.surface;
  j["state"] = to_string(q.state);
  j["prune_reason"] = q.prune_reason;
  return j;
}

Query query_from_json(const Json& j) {
  Query q;
  q.query_id = j.at("query_id").get<std::string>();
  q.kind = parse_query_kind(j.at("kind").get<std::string>());
  if (auto i = get_opt<std::string>(j, "interrogative")) {
    q.interrogative = parse_interrogative(*i);
  }
  q.subject = j.at("subject").get<std::string>();
  q.object2 = get_opt<std::string>(j, "object2");
  q.verb = get_opt<std::string>(j, "verb");
  q.adjective = get_opt<std::string>(j, "adjective");
  q.surface = j.at("surface").get<std::string>();
  q.state = parse_query_state(j.at("state").get<std::string>());
  q.prune_reason = j.value("prune_reason", std::string());
  return q;
}

void write_queries(const fs::path& path, std::span<const Query> queries) {
  std::string out;
  for (const auto& q : queries) {
    out += to_json(q).dump();
    out += '\n';
  }
  write_file(path, out);
}

std::vector<Query> read_queries(const fs::path& path) {
  std::vector<Query> out;
  for_each_jsonl(path, [&](const Json& j) { out.push_back(query_from_json(j)); });
  return out;
}

Json to_json(const AnswerRecord& a) {
  Json j = header();
  j["query_id"] = a.query_id;
  Json cands = Json::array();
  for (const auto& c : a.candidates) {
    Json cj;
    cj["sent_id"] = c.sent_id ? Json(c.sent_id->str()) : Json(nullptr);
    cj["object_id"] = opt(c.object_id);
    cj["confidence"] = c.confidence;
    cj["matched"] = c.matched;
    cands.push_back(std::move(cj));
  }
  j["candidates"] = std::move(cands);
  j["reverse_ok"] = opt(a.reverse_ok);
  return j;
}

AnswerRecord answer_from_json(const Json& j) {
  AnswerRecord a;
  a.query_id = j.at("query_id").get<std::string>();
  for (const auto& cj : j.at("candidates")) {
    AnswerCandidate c;
    if (auto s = get_opt<std::string>(cj, "sent_id")) c.sent_id = SentId::parse(*s);
    c.object_id = get_opt<std::string>(cj, "object_id");
    c.confidence = cj.at("confidence").get<double>();
    c.matched = cj.value("matched", std::vector<std::string>{});
    a.candidates.push_back(std::move(c));
  }
  a.reverse_ok = get_opt<bool>(j, "reverse_ok");
  return a;
}

void write_answers(const fs::path& path, std::span<const AnswerRecord> answers) {
  std::string out;
  for (const auto& a : answers) {
    out += to_json(a).dump();
    out += '\n';
  }
  write_file(path, out);
}

std::vector<AnswerRecord> read_answers(const fs::path& path) {
  std::vector<AnswerRecord> out;
  for_each_jsonl(path, [&](const Json& j) { out.push_back(answer_from_json(j)); });
  return out;
}

Json to_json(const Label& l) {
  Json j = header();
  j["query_id"] = l.query_id;
  j["category"] = to_string(l.category);
  j["answer_correct"] = opt(l.answer_correct);
  j["reviewer"] = l.reviewer;
  j["ts"] = l.ts;
  return j;
}

Label label_from_json(const Json& j) {
  Label l;
  l.query_id = j.at("query_id").get<std::string>();
  l.category = parse_category(j.at("category").get<std::string>());
  l.answer_correct = get_opt<bool>(j, "answer_correct");
  l.reviewer = j.at("reviewer").get<std::string>();
  l.ts = j.value("ts", std::int64_t{0});
  if (l.query_id.empty()) throw DataError("label without query_id");
  if (l.reviewer.empty()) throw DataError("label without reviewer");
  return l;
}

std::vector<Label> read_labels(const fs::path& path) {
  std::vector<Label> out;
  if (!fs::exists(path)) return out;
  for_each_jsonl(path, [&](const Json& j) { out.push_back(label_from_json(j)); });
  return out;
}

void append_label(const fs::path& path, const Label& l) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw DataError("cannot append to " + path.string());
  out << to_json(l).dump() << '\n';
  out.flush();
  if (!out) throw DataError("write failed: " + path.string());
}

namespace {

// RFC 4180 fields: quotes around fields, doubled quotes inside them.
std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw DataError("unterminated quote");
  return fields;
}

std::optional<bool> parse_flag(const std::string& raw) {
  const auto s = to_lower(trim(raw));
  if (s.empty()) return std::nullopt;
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw DataError("bad answer_correct value '" + raw + "'");
}

}  // namespace

std::vector<Label> import_labels_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> cols;
  std::vector<Label> out;
  auto col = [&](const std::vector<std::string>& f, std::string_view name) -> std::string {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (cols[i] == name) return i < f.size() ? std::string(trim(f[i])) : std::string();
    }
    return {};
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      auto f = parse_csv_line(line);
      if (cols.empty()) {
        for (auto& c : f) cols.push_back(std::string(trim(c)));
        for (const char* need : {"query_id", "category", "reviewer"}) {
          if (std::find(cols.begin(), cols.end(), need) == cols.end()) {
            throw DataError(std::string("missing column ") + need);
          }
        }
        continue;
      }
      Label l;
      l.query_id = col(f, "query_id");
      l.category = parse_category(col(f, "category"));
      l.answer_correct = parse_flag(col(f, "answer_correct"));
      l.reviewer = col(f, "reviewer");
      const auto ts = col(f, "ts");
      l.ts = ts.empty() ? 0 : std::stoll(ts);
      if (l.query_id.empty() || l.reviewer.empty()) {
        throw DataError("query_id and reviewer are required");
      }
      out.push_back(std::move(l));
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const std::logic_error&) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": bad ts");
    }
  }
  return out;
}

Json to_json(const Sample& s) {
  Json j = header();
  j["seed"] = s.seed;
  j["stratified"] = s.stratified;
  j["truncated"] = s.truncated;
  j["query_ids"] = s.query_ids;
  return j;
}

Sample sample_from_json(const Json& j) {
  check_version(j);
  Sample s;
  s.seed = j.at("seed").get<std::uint64_t>();
  s.stratified = j.at("stratified").get<bool>();
  s.truncated = j.at("truncated").get<bool>();
  s.query_ids = j.at("query_ids").get<std::vector<std::string>>();
  return s;
}

Json to_json(const CoverageReport& r) {
  Json j = header();
  j["total_queries"] = r.total_queries;
  j["answered_high_conf"] = r.answered_high_conf;
  j["coverage"] = r.coverage;
  j["no_live_queries"] = r.no_live_queries;
  Json rows = Json::array();
  for (const auto& k : r.per_kind) {
    Json row;
    row["kind"] = to_string(k.kind);
    row["total"] = k.total;
    row["answered"] = k.answered;
    row["coverage"] = k.coverage;
    rows.push_back(std::move(row));
  }
  j["per_kind"] = std::move(rows);
  return j;
}

Json to_json(const PrecisionEstimate& p) {
  Json j = header();
  j["attempted"] = p.attempted;
  j["correct"] = p.correct;
  j["point"] = p.point;
  j["lo"] = p.lo;
  j["hi"] = p.hi;
  j["z"] = p.z;
  return j;
}

Json to_json(const UtilityBreakdown& u) {
  Json j = header();
  j["labeled"] = u.labeled;
  Json cats = Json::object();
  for (auto c : kAllCategories) {
    const auto i = static_cast<std::size_t>(c);
    Json row;
    row["count"] = u.counts[i];
    row["fraction"] = u.fractions[i];
    cats[std::string(to_string(c))] = std::move(row);
  }
  j["categories"] = std::move(cats);
  return j;
}

Json to_json(const GapRecord& g) {
  Json j;
  j["query_id"] = g.query_id;
  j["surface"] = g.surface;
  j["kind"] = to_string(g.kind);
  j["best_confidence"] = g.best_confidence;
  j["subjects"] = g.subjects;
  return j;
}

Json to_json(std::span<const GapRecord> gaps) {
  Json j = header();
  Json rows = Json::array();
  for (const auto& g : gaps) rows.push_back(to_json(g));
  j["gaps"] = std::move(rows);
  return j;
}

std::string pair_scores_tsv(std::span<const PairScore> scores) {
  std::string out = "# version 1\n# corpus1\tcorpus2\tgenerated\tuseful\tu\n";
  for (const auto& s : scores) {
    char u[32];
    std::snprintf(u, sizeof u, "%.6f", s.u);
    out += s.c1 + "\t" + s.c2 + "\t" + std::to_string(s.generated) + "\t" +
           std::to_string(s.useful) + "\t" + u + "\n";
  }
  return out;
}

Json groups_json(const std::vector<std::vector<std::string>>& groups) {
  Json j = header();
  j["groups"] = groups;
  return j;
}

}  // namespace autoq
