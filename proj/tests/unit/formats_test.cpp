// Copyright 2026 The EGE Authors
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

#include "core/formats.hpp"
#include "core/matcher.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace ege;
using namespace ege::formats;
using namespace ege::testing;

namespace {

// Canonical text of any document kind, or nullopt when it fails to parse.
std::optional<std::string> canonical(const std::string& text) {
  switch (detect_kind(text)) {
    case DocumentKind::kSchema: {
      auto r = parse_schema(text);
      return r ? std::optional(serialize_schema(*r)) : std::nullopt;
    }
    case DocumentKind::kInstance: {
      auto r = parse_instance(text);
      return r ? std::optional(serialize_instance(*r)) : std::nullopt;
    }
    case DocumentKind::kCorpus: {
      auto r = parse_corpus(text);
      return r ? std::optional(serialize_corpus(*r)) : std::nullopt;
    }
    case DocumentKind::kGraph: {
      auto r = parse_graph(text);
      return r ? std::optional(serialize_graph(*r)) : std::nullopt;
    }
    case DocumentKind::kUnknown:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("outbreak schema parses with three gates") {
  const auto s = load_schema("outbreak_schema.json");
  std::size_t gates = 0;
  for (const auto& e : s.events) gates += e.gate ? 1 : 0;
  CHECK(gates == 3);
  CHECK(s.events.size() == 8);
  const auto* d = s.find("death-outcomes");
  REQUIRE(d);
  CHECK(d->gate->kind == GateKind::kAnd);
  CHECK(d->gate->members == std::vector<std::string>{"death", "funeral"});
}

TEST_CASE("empty schema document") {
  auto s = parse_schema(R"({"id": "e", "name": "E", "events": [], "roots": []})");
  REQUIRE(s);
  CHECK(s->events.empty());
  CHECK(s->roots.empty());
}

TEST_CASE("dangling gate member is named in a SCHEMA_REF diagnostic") {
  const std::string text = R"({"id": "s", "name": "S", "roots": ["a"], "events": [
    {"id": "a", "name": "A", "children": ["b"], "gate": {"kind": "OR", "members": ["b", "ghost"]}},
    {"id": "b", "name": "B"}]})";
  auto s = parse_schema(text);
  REQUIRE_FALSE(s);
  // Linear scan of every referenced id against the declared ones.
  auto j = Json::parse(text);
  std::set<std::string> declared, dangling;
  for (const auto& e : j["events"]) declared.insert(e["id"].get<std::string>());
  for (const auto& e : j["events"]) {
    for (const auto& c : e.value("children", Json::array()))
      if (!declared.count(c.get<std::string>())) dangling.insert(c.get<std::string>());
    if (e.contains("gate"))
      for (const auto& m : e["gate"]["members"])
        if (!declared.count(m.get<std::string>())) dangling.insert(m.get<std::string>());
  }
  REQUIRE(dangling == std::set<std::string>{"ghost"});
  std::set<std::string> reported;
  for (const auto& d : s.diagnostics())
    if (d.code == "SCHEMA_REF") reported.insert(d.subject);
  CHECK(reported == dangling);
}

TEST_CASE("gate with no members is GATE_ARITY") {
  auto s = parse_schema(R"({"id": "s", "name": "S", "roots": ["a"], "events": [
    {"id": "a", "name": "A", "gate": {"kind": "AND", "members": []}}]})");
  REQUIRE_FALSE(s);
  CHECK(has_code(s.diagnostics(), "GATE_ARITY"));
}

TEST_CASE("cholera corpus has 13 documents and 114 images") {
  const auto c = load_corpus("cholera_corpus.json");
  CHECK(c.documents.size() == 13);
  CHECK(c.image_count() == 114);
}

TEST_CASE("instance with one event is a valid single star") {
  auto i = parse_instance(R"({"events": [{"id": "e", "type": {"qnode": "Q1", "name": "t"},
    "name": "E"}], "entities": [], "temporal": [], "provenance": []})");
  REQUIRE_MESSAGE(i, describe(i.diagnostics()));
  CHECK(i->events.size() == 1);
  CHECK(i->events[0].arguments.empty());
}

TEST_CASE("reversed offsets are OFFSET_ORDER") {
  auto i = parse_instance(R"({"events": [], "entities": [], "temporal": [], "provenance": [
    {"kind": "text", "id": "p", "doc_id": "d", "start": 40, "end": 30, "text": "x"}]})");
  REQUIRE_FALSE(i);
  CHECK(has_code(i.diagnostics(), "OFFSET_ORDER"));
}

TEST_CASE("out-of-range instance confidence is rejected") {
  auto i = parse_instance(R"({"events": [{"id": "e", "type": {"qnode": "Q1", "name": "t"},
    "name": "E", "confidence": 1.2}], "entities": [], "temporal": [], "provenance": []})");
  REQUIRE_FALSE(i);
  CHECK(has_code(i.diagnostics(), "CONFIDENCE_RANGE"));
}

TEST_CASE("syntax errors carry a line and column") {
  auto s = parse_schema("{\n  \"id\": \"x\",\n  oops\n}");
  REQUIRE_FALSE(s);
  REQUIRE(s.diagnostics().size() == 1);
  CHECK(s.diagnostics()[0].code == "SYNTAX");
  CHECK(s.diagnostics()[0].path.rfind("3:", 0) == 0);
}

TEST_CASE("wrong field types name the field path") {
  auto s = parse_schema(R"({"id": "s", "name": "S", "roots": ["a"], "events": [{"id": 5}]})");
  REQUIRE_FALSE(s);
  CHECK(s.diagnostics()[0].code == "SYNTAX");
  CHECK(s.diagnostics()[0].path.find("events") != std::string::npos);
}

TEST_CASE("unknown fields survive a round trip") {
  const std::string text = R"({"id": "s", "name": "S", "curator": {"who": "x"},
    "events": [{"id": "a", "name": "A", "color": "red"}], "roots": ["a"]})";
  auto s = parse_schema(text);
  REQUIRE(s);
  const std::string once = serialize_schema(*s);
  CHECK(once.find("\"curator\"") != std::string::npos);
  CHECK(once.find("\"color\": \"red\"") != std::string::npos);
  auto again = parse_schema(once);
  REQUIRE(again);
  CHECK(*again == *s);
  CHECK(serialize_schema(*again) == once);
}

TEST_CASE("every fixture file is already canonical") {
  const auto files = all_fixture_files();
  CHECK(files.size() >= 8);
  for (const auto& path : files) {
    const std::string text = read_file(path);
    const auto once = canonical(text);
    REQUIRE_MESSAGE(once, path);
    CHECK_MESSAGE(*once == text, path);
    CHECK_MESSAGE(canonical(*once) == once, path);
  }
}

TEST_CASE("matcher output survives serialize and parse") {
  auto m = matcher::match_graphs(load_schema("outbreak_schema.json"),
                                 load_instance("outbreak_instance.json"));
  REQUIRE(m);
  const std::string text = serialize_graph(m->graph);
  auto back = parse_graph(text);
  REQUIRE(back);
  CHECK(*back == m->graph);
  CHECK(serialize_graph(*back) == text);
}

TEST_CASE("random documents round-trip structurally and byte-exactly") {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto rg = random_graph(rng, 20);
    const std::string st = serialize_schema(rg.schema);
    const std::string it = serialize_instance(rg.instance);
    const std::string ct = serialize_corpus(rg.corpus);
    const std::string gt = serialize_graph(rg.graph);
    auto s = parse_schema(st);
    auto in = parse_instance(it);
    auto c = parse_corpus(ct);
    auto g = parse_graph(gt);
    REQUIRE(s);
    REQUIRE(in);
    REQUIRE(c);
    REQUIRE(g);
    CHECK(*s == rg.schema);
    CHECK(*in == rg.instance);
    CHECK(*c == rg.corpus);
    CHECK(*g == rg.graph);
    CHECK(serialize_graph(*g) == gt);
  }
}

TEST_CASE("empty graph has a minimal canonical form") {
  const std::string text = serialize_graph(InstantiatedGraph{});
  auto back = parse_graph(text);
  REQUIRE(back);
  CHECK(*back == InstantiatedGraph{});
  const auto j = Json::parse(text);
  for (const auto& [key, value] : j.items()) CHECK_MESSAGE(value.empty(), key);
}

TEST_CASE("document kinds are detected from top-level keys") {
  CHECK(detect_kind(read_fixture("outbreak_schema.json")) == DocumentKind::kSchema);
  CHECK(detect_kind(read_fixture("cholera_instance.json")) == DocumentKind::kInstance);
  CHECK(detect_kind(read_fixture("cholera_corpus.json")) == DocumentKind::kCorpus);
  CHECK(detect_kind("{\"nothing\": 1}") == DocumentKind::kUnknown);
  CHECK(detect_kind("not json") == DocumentKind::kUnknown);
}

TEST_CASE("corpus rejects duplicate ids and empty images") {
  auto c = parse_corpus(R"({"documents": [
    {"doc_id": "d", "title": "", "text": "x", "images": [
      {"image_id": "i", "media": "m", "width": 0, "height": 5}]},
    {"doc_id": "d", "title": "", "text": "y", "images": []}]})");
  REQUIRE_FALSE(c);
  CHECK(has_code(c.diagnostics(), "DUPLICATE_ID"));
  CHECK(has_code(c.diagnostics(), "INVALID_DIMENSIONS"));
}
