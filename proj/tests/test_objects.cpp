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

#include <set>

#include "fixtures.hpp"

using namespace autoq;
using namespace autoq::test;

TEST_CASE("grant objects") {
  const auto t = extract_objects(grant_corpus(), gaz());
  REQUIRE(t.objects.size() == 2);
  CHECK(t.objects[0].canonical == "General Grant");
  CHECK(t.objects[0].type == ObjectType::kPerson);
  CHECK(t.objects[1].canonical == "US Civil War");
  CHECK(t.objects[1].type == ObjectType::kConcept);
  CHECK(t.objects[1].display() == "the US Civil War");
  CHECK(t.objects[0].display() == "General Grant");
  CHECK(t.mentions.size() == 2);
  for (const auto& o : t.objects) {
    CHECK(o.object_id == object_id_for(o.canonical));
    CHECK(&t.at(o.object_id) == &o);
  }
  CHECK(t.find("nope") == nullptr);
  CHECK_THROWS_AS(t.at("nope"), DataError);
}

TEST_CASE("canonicalization merges variants") {
  const auto c = corpus_from("m", {"The rivers flooded. A river rose. Rivers ran dry."});
  const auto t = extract_objects(c, gaz());
  const CanonicalObject* river = nullptr;
  for (const auto& o : t.objects) {
    if (o.canonical == "river") river = &o;
  }
  REQUIRE(river != nullptr);
  CHECK(river->mention_count == 3);
}

TEST_CASE("canonicalize is idempotent") {
  for (std::string p : {"the old mills", "General Grant", "a US Civil War", "prices",
                        "the Gulf Coast refineries"}) {
    const auto once = canonicalize(p, lex());
    CHECK(canonicalize(once, lex()) == once);
  }
  CHECK(canonicalize("the old mills", lex()) == "old mill");
}

TEST_CASE("type priority") {
  CHECK(make_object("Grant", gaz(), true).type == ObjectType::kPerson);
  CHECK(make_object("war", gaz()).type == ObjectType::kConcept);
  CHECK(make_object("hammer", gaz()).type == ObjectType::kObject);
  // Unknown multiword proper nouns default to Person.
  CHECK(make_object("Zork Blam", gaz(), true).type == ObjectType::kPerson);
  TypeGazetteer g = gaz();
  g.proper_multiword_is_person = false;
  CHECK(make_object("Zork Blam", g, true).type == ObjectType::kObject);
}

TEST_CASE("fixture extraction is sorted and consistent") {
  const auto corpora = fixture_corpora();
  const auto t = extract_objects(std::span<const Corpus>(corpora), gaz());
  CHECK(t.objects.size() > 50);
  std::set<std::string> ids;
  for (std::size_t i = 1; i < t.objects.size(); ++i) {
    CHECK(t.objects[i - 1].canonical < t.objects[i].canonical);
  }
  std::vector<std::size_t> counted(t.objects.size(), 0);
  for (const auto& m : t.mentions) {
    REQUIRE(m.object_index < t.objects.size());
    ++counted[m.object_index];
  }
  for (std::size_t i = 0; i < t.objects.size(); ++i) {
    CHECK(counted[i] == t.objects[i].mention_count);
    CHECK(ids.insert(t.objects[i].object_id).second);
  }
  // Each type occurs in the fixtures.
  std::set<ObjectType> types;
  for (const auto& o : t.objects) types.insert(o.type);
  CHECK(types.size() == 4);
}
