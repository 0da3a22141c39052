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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "core/diagnostics.hpp"
#include "core/model.hpp"

namespace ege::formats {

// Insertion-ordered so unknown fields survive a round trip in their original
// order.
using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Schema documents

struct ArgRole {
  std::string role;
  std::vector<std::string> allowed_types;
  Json extra = Json::object();
  bool operator==(const ArgRole&) const = default;
};

struct SchemaGate {
  GateKind kind = GateKind::kOr;
  std::vector<std::string> members;
  GatePlacement placement = GatePlacement::kChildren;
  Json extra = Json::object();
  bool operator==(const SchemaGate&) const = default;
};

struct SchemaEvent {
  std::string id;
  std::string name;
  std::string description;
  std::string wd_node;
  std::string wd_name;
  std::vector<std::string> children;
  std::optional<SchemaGate> gate;
  std::vector<std::string> outlinks;  // temporal successors
  std::vector<ArgRole> arg_roles;
  Json extra = Json::object();
  bool operator==(const SchemaEvent&) const = default;
};

struct SchemaFile {
  std::string id;
  std::string name;
  std::vector<SchemaEvent> events;
  std::vector<std::string> roots;
  Json extra = Json::object();

  const SchemaEvent* find(const std::string& id) const;
  bool operator==(const SchemaFile&) const = default;
};

// ---------------------------------------------------------------------------
// Instance documents

struct Trigger {
  std::string text;
  std::string doc_id;
  std::int64_t start = 0;
  std::int64_t end = 0;
  bool operator==(const Trigger&) const = default;
};

struct InstanceEvent {
  std::string id;
  std::optional<Trigger> trigger;
  EventType type;
  std::string name;
  std::string description;
  std::vector<Argument> arguments;
  std::optional<double> confidence;  // extraction confidence
  std::vector<std::string> provenance;
  Json extra = Json::object();
  bool operator==(const InstanceEvent&) const = default;
};

struct InstanceEntity {
  std::string id;
  std::string name;
  std::optional<std::string> wd_qnode;
  std::vector<std::string> provenance;
  Json extra = Json::object();
  bool operator==(const InstanceEntity&) const = default;
};

struct ProvenanceRecord {
  Provenance record;
  Json extra = Json::object();
  bool operator==(const ProvenanceRecord&) const = default;
};

struct InstanceFile {
  std::vector<InstanceEvent> events;
  std::vector<InstanceEntity> entities;
  std::vector<TemporalEdge> temporal;
  std::vector<ProvenanceRecord> provenance;
  Json extra = Json::object();
  bool operator==(const InstanceFile&) const = default;
};

// ---------------------------------------------------------------------------
// Corpus documents

struct ImageRecord {
  std::string image_id;
  std::string media;
  std::int64_t width = 0;
  std::int64_t height = 0;
  Json extra = Json::object();
  bool operator==(const ImageRecord&) const = default;
};

struct Document {
  std::string doc_id;
  std::string title;
  std::string text;
  std::vector<ImageRecord> images;
  Json extra = Json::object();
  bool operator==(const Document&) const = default;
};

struct CorpusFile {
  std::vector<Document> documents;
  Json extra = Json::object();

  std::size_t image_count() const;
  bool operator==(const CorpusFile&) const = default;
};

enum class DocumentKind { kSchema, kInstance, kCorpus, kGraph, kUnknown };
const char* to_string(DocumentKind k);

// Guesses the kind from top-level keys. kUnknown for malformed text.
DocumentKind detect_kind(std::string_view text);

Result<SchemaFile> parse_schema(std::string_view text);
Result<InstanceFile> parse_instance(std::string_view text);
Result<CorpusFile> parse_corpus(std::string_view text);
Result<InstantiatedGraph> parse_graph(std::string_view text);

// Canonical text: fixed key order, two-space indentation, trailing newline.
std::string serialize_schema(const SchemaFile& s);
std::string serialize_instance(const InstanceFile& inst);
std::string serialize_corpus(const CorpusFile& c);
std::string serialize_graph(const InstantiatedGraph& g);

// Flat source-only view of an instance, used for structural checks.
InstantiatedGraph instance_as_graph(const InstanceFile& inst);

// Element-level conversions shared with the service payloads.
Json to_json(const Diagnostic& d);
Json to_json(const Diagnostics& d);
Json to_json(const EventType& t);
Json to_json(const Argument& a);
Json to_json(const EventNode& e);
Json to_json(const EntityNode& e);
Json to_json(const GateSpec& g);
Json to_json(const GateStatus& s);
Json to_json(const Provenance& p);
Json to_json(const BoundingBox& b);
Json graph_to_json(const InstantiatedGraph& g);

// Field readers that report SYNTAX diagnostics under `path`.
class JsonReader {
 public:
  explicit JsonReader(Diagnostics& diags) : diags_(diags) {}

  bool expect_object(const Json& j, const std::string& path);
  bool expect_array(const Json& j, const std::string& path);
  bool has(const Json& obj, std::string_view key) const;

  bool read(const Json& obj, std::string_view key, const std::string& path,
            std::string& out, bool required = true);
  bool read(const Json& obj, std::string_view key, const std::string& path,
            std::int64_t& out, bool required = true);
  bool read(const Json& obj, std::string_view key, const std::string& path,
            double& out, bool required = true);
  bool read(const Json& obj, std::string_view key, const std::string& path,
            bool& out, bool required = true);
  bool read(const Json& obj, std::string_view key, const std::string& path,
            std::vector<std::string>& out, bool required = true);

  bool read_gate(const Json& obj, const std::string& path, GateSpec& out);
  bool read_provenance(const Json& obj, const std::string& path, Provenance& out);
  bool read_bbox(const Json& j, const std::string& path, BoundingBox& out);
  bool read_event_type(const Json& j, const std::string& path, EventType& out);

  void fail(const std::string& path, const std::string& message);

 private:
  Diagnostics& diags_;
};

// Parses `text` as JSON, reporting SYNTAX with line:col on failure.
std::optional<Json> parse_json(std::string_view text, Diagnostics& diags);

std::string dump(const Json& j);

}  // namespace ege::formats
