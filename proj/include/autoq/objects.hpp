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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "autoq/common.hpp"
#include "autoq/ingest.hpp"

namespace autoq {

// Term lists driving the four-way object typing. Titles keep their case;
// every other set is lowercase. Loaded from `term<TAB>category` TSV.
struct TypeGazetteer {
  std::unordered_set<std::string> titles;
  std::unordered_set<std::string> person_names;
  std::unordered_set<std::string> location_terms;
  std::unordered_set<std::string> location_suffixes;
  std::unordered_set<std::string> concept_terms;
  std::unordered_set<std::string> concept_suffixes;
  std::unordered_set<std::string> quantified_terms;
  // Unknown multiword proper nouns are typed Person when set.
  bool proper_multiword_is_person = true;

  static TypeGazetteer load(const std::filesystem::path& path);
  static TypeGazetteer load_default();
};

struct CanonicalObject {
  std::string object_id;
  std::string canonical;
  ObjectType type = ObjectType::kObject;
  std::size_t mention_count = 0;
  bool quantified = false;
  // Every token of the canonical form is a proper noun.
  bool proper = false;
  // Determiner most mentions carried ("the", "a", "an"), used when the
  // object is realized inside a question. Empty for bare mentions.
  std::string article;

  // Canonical form with its article, e.g. "the US Civil War".
  std::string display() const;
};

struct ObjectMention {
  SentId sent_id;
  Chunk chunk;
  std::string surface;
  std::size_t object_index = 0;
};

struct ObjectTable {
  // Sorted by canonical form (byte order).
  std::vector<CanonicalObject> objects;
  std::vector<ObjectMention> mentions;

  const CanonicalObject* find(std::string_view object_id) const;
  const CanonicalObject& at(std::string_view object_id) const;
  // Rebuilds the id lookup; call after editing `objects`.
  void reindex();

 private:
  std::unordered_map<std::string, std::size_t> by_id_;
};

struct TypeDecision {
  ObjectType type = ObjectType::kObject;
  bool quantified = false;
};

std::string object_id_for(std::string_view canonical);

// Canonical form of a token range: leading determiners dropped, proper
// nouns keep their case, other tokens lowercased, a nominal head reduced to
// its singular.
std::string canonical_form(const std::vector<Token>& tokens, std::size_t first,
                           std::size_t last);

// Canonicalizes free text; idempotent on its own output.
std::string canonicalize(std::string_view phrase, const Lexicon& lex);

// Priority Person > Location > Concept > proper multiword (Person) > Object.
// Concepts and objects whose head is a quantified term are quantified.
TypeDecision classify_type(const CanonicalObject& obj,
                           const TypeGazetteer& gaz);

// Builds a typed object directly from a canonical string.
CanonicalObject make_object(std::string canonical, const TypeGazetteer& gaz,
                            bool proper = false, std::string article = {});

ObjectTable extract_objects(const Corpus& corpus, const TypeGazetteer& gaz);
ObjectTable extract_objects(std::span<const Corpus> corpora,
                            const TypeGazetteer& gaz);

}  // namespace autoq
