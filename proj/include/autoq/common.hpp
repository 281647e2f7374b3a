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

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace autoq {

// Malformed or inconsistent input data (files, records, ids).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated an operation's precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class ObjectType { kPerson, kObject, kLocation, kConcept };

inline constexpr std::array<ObjectType, 4> kAllObjectTypes = {
    ObjectType::kPerson, ObjectType::kObject, ObjectType::kLocation,
    ObjectType::kConcept};

enum class Interrogative { kWho, kWhat, kWhy, kWhen, kWhere, kHow };

inline constexpr std::array<Interrogative, 6> kAllInterrogatives = {
    Interrogative::kWho,  Interrogative::kWhat,  Interrogative::kWhy,
    Interrogative::kWhen, Interrogative::kWhere, Interrogative::kHow};

enum class QueryKind {
  kObjectJournalism,
  kPairJournalism,
  kComparative,
  kAnalogy,
  kAnalogyExtension,
  kCorrelation,
};

inline constexpr std::array<QueryKind, 6> kAllQueryKinds = {
    QueryKind::kObjectJournalism, QueryKind::kPairJournalism,
    QueryKind::kComparative,      QueryKind::kAnalogy,
    QueryKind::kAnalogyExtension, QueryKind::kCorrelation};

std::string_view to_string(ObjectType t);
std::string_view to_string(Interrogative i);
std::string_view to_string(QueryKind k);

// Parsers accept the exact names produced by to_string(); they throw
// DataError on anything else.
ObjectType parse_object_type(std::string_view s);
Interrogative parse_interrogative(std::string_view s);
QueryKind parse_query_kind(std::string_view s);

// Stable 64-bit FNV-1a, rendered as 16 lowercase hex digits.
class Fnv1a {
 public:
  Fnv1a& update(std::string_view data);
  // Feeds a field followed by a unit separator so adjacent fields never
  // alias ("ab","c" vs "a","bc").
  Fnv1a& field(std::string_view data);
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::uint64_t fnv1a64(std::string_view data);
std::string hex_id(std::uint64_t h);
std::string stable_id(std::string_view data);

// ASCII-only helpers; bytes >= 0x80 are treated as letters.
std::string to_lower(std::string_view s);
bool is_word_byte(char c);
bool is_upper_ascii(char c);
bool has_alnum(std::string_view s);
bool starts_with_upper(std::string_view s);
std::string_view trim(std::string_view s);
bool ends_with(std::string_view s, std::string_view suffix);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace autoq
