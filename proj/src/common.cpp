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

#include "autoq/common.hpp"

#include <cctype>
#include <cstdio>

namespace autoq {

std::string_view to_string(ObjectType t) {
  switch (t) {
    case ObjectType::kPerson: return "Person";
    case ObjectType::kObject: return "Object";
    case ObjectType::kLocation: return "Location";
    case ObjectType::kConcept: return "Concept";
  }
  return "?";
}

std::string_view to_string(Interrogative i) {
  switch (i) {
    case Interrogative::kWho: return "Who";
    case Interrogative::kWhat: return "What";
    case Interrogative::kWhy: return "Why";
    case Interrogative::kWhen: return "When";
    case Interrogative::kWhere: return "Where";
    case Interrogative::kHow: return "How";
  }
  return "?";
}

std::string_view to_string(QueryKind k) {
  switch (k) {
    case QueryKind::kObjectJournalism: return "ObjectJournalism";
    case QueryKind::kPairJournalism: return "PairJournalism";
    case QueryKind::kComparative: return "Comparative";
    case QueryKind::kAnalogy: return "Analogy";
    case QueryKind::kAnalogyExtension: return "AnalogyExtension";
    case QueryKind::kCorrelation: return "Correlation";
  }
  return "?";
}

ObjectType parse_object_type(std::string_view s) {
  for (ObjectType t : kAllObjectTypes) {
    if (to_string(t) == s) return t;
  }
  throw DataError("unknown object type '" + std::string(s) + "'");
}

Interrogative parse_interrogative(std::string_view s) {
  for (Interrogative i : kAllInterrogatives) {
    if (to_string(i) == s) return i;
  }
  throw DataError("unknown interrogative '" + std::string(s) + "'");
}

QueryKind parse_query_kind(std::string_view s) {
  for (QueryKind k : kAllQueryKinds) {
    if (to_string(k) == s) return k;
  }
  throw DataError("unknown query kind '" + std::string(s) + "'");
}

Fnv1a& Fnv1a::update(std::string_view data) {
  for (unsigned char c : data) {
    h_ ^= c;
    h_ *= 0x100000001b3ULL;
  }
  return *this;
}

Fnv1a& Fnv1a::field(std::string_view data) {
  update(data);
  return update("\x1f");
}

std::uint64_t fnv1a64(std::string_view data) {
  return Fnv1a().update(data).value();
}

std::string hex_id(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 16);
}

std::string stable_id(std::string_view data) { return hex_id(fnv1a64(data)); }

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_word_byte(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0;
}

bool is_upper_ascii(char c) { return c >= 'A' && c <= 'Z'; }

bool has_alnum(std::string_view s) {
  for (char c : s) {
    if (is_word_byte(c)) return true;
  }
  return false;
}

bool starts_with_upper(std::string_view s) {
  return !s.empty() && is_upper_ascii(s.front());
}

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

}  // namespace autoq
