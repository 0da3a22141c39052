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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "core/diagnostics.hpp"

namespace ege {

enum class EventStatus { kMatched, kSourceOnly, kPredicted };
enum class GateKind { kAnd, kOr, kXor };
enum class GatePlacement { kChildren, kSuccessors };
enum class GateVerdict { kSatisfied, kPending, kViolated };

// Progressive mode never reports AND/OR violations; strict mode turns pending
// into violated once the gate's source event is marked terminal.
enum class GateMode { kProgressive, kStrict };

const char* to_string(EventStatus s);
const char* to_string(GateKind k);
const char* to_string(GatePlacement p);
const char* to_string(GateVerdict v);
std::optional<EventStatus> parse_event_status(std::string_view s);
std::optional<GateKind> parse_gate_kind(std::string_view s);
std::optional<GatePlacement> parse_gate_placement(std::string_view s);

// Ontology type reference: qnode identifier plus readable name.
struct EventType {
  std::string qnode;
  std::string name;
  bool operator==(const EventType&) const = default;
};

struct Argument {
  std::string role;
  std::string filler;  // entity id
  std::int64_t order = 0;
  bool operator==(const Argument&) const = default;
};

struct EventNode {
  std::string id;
  std::string name;
  std::string description;
  EventType event_type;
  EventStatus status = EventStatus::kSourceOnly;
  double confidence = 1.0;
  std::vector<std::string> children;
  std::vector<Argument> arguments;
  std::vector<std::string> provenance;
  std::optional<std::string> schema_ref;
  bool terminal = false;

  bool is_parent() const { return !children.empty(); }
  bool occurred() const { return status != EventStatus::kPredicted; }
  bool operator==(const EventNode&) const = default;
};

struct EntityNode {
  std::string id;
  std::string name;
  std::optional<std::string> wd_qnode;
  std::vector<std::string> provenance;
  bool operator==(const EntityNode&) const = default;
};

struct TemporalEdge {
  std::string before;
  std::string after;
  auto operator<=>(const TemporalEdge&) const = default;
};

struct GateSpec {
  std::string id;
  std::string source;
  GateKind kind = GateKind::kOr;
  std::vector<std::string> members;
  GatePlacement placement = GatePlacement::kChildren;
  bool operator==(const GateSpec&) const = default;
};

struct GateStatus {
  std::string gate;
  GateVerdict verdict = GateVerdict::kPending;
  std::vector<std::string> occurred;
  bool operator==(const GateStatus&) const = default;
};

// Pixel rectangle inside a source image.
struct BoundingBox {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t w = 0;
  std::int64_t h = 0;
  bool operator==(const BoundingBox&) const = default;
};

struct TextProvenance {
  std::string id;
  std::string doc_id;
  std::int64_t start = 0;  // Unicode scalar offsets, [start, end)
  std::int64_t end = 0;
  std::string text;
  bool operator==(const TextProvenance&) const = default;
};

struct ImageProvenance {
  std::string id;
  std::string image_id;
  BoundingBox bbox;
  bool operator==(const ImageProvenance&) const = default;
};

using Provenance = std::variant<TextProvenance, ImageProvenance>;

const std::string& provenance_id(const Provenance& p);

struct MatchPair {
  std::string schema;
  std::string instance;
  bool operator==(const MatchPair&) const = default;
};

// Merged result of matching an instance graph against a schema.
struct InstantiatedGraph {
  std::map<std::string, EventNode> events;
  std::map<std::string, EntityNode> entities;
  std::vector<TemporalEdge> temporal;
  std::vector<GateSpec> gates;
  std::vector<std::string> roots;
  std::vector<MatchPair> match_pairs;
  std::map<std::string, Provenance> provenance;
  // Schema events in document order; used to break layout ties.
  std::vector<std::string> schema_order;

  const EventNode* find_event(const std::string& id) const;
  EventNode* find_event(const std::string& id);
  const GateSpec* find_gate(const std::string& id) const;

  bool operator==(const InstantiatedGraph&) const = default;
};

// Parent lookup derived from children lists. When the forest invariant is
// broken the first parent in id order wins.
class Hierarchy {
 public:
  explicit Hierarchy(const InstantiatedGraph& g);

  // Empty string for top-level events.
  const std::string& parent_of(const std::string& id) const;
  bool is_top_level(const std::string& id) const;
  bool same_group(const std::string& a, const std::string& b) const;
  std::size_t depth(const std::string& id) const;
  bool is_descendant(const std::string& id, const std::string& ancestor) const;
  // Sibling groups keyed by parent id ("" = top level); members in id order.
  const std::map<std::string, std::vector<std::string>>& groups() const {
    return groups_;
  }

 private:
  std::map<std::string, std::string> parent_;
  std::map<std::string, std::vector<std::string>> groups_;
};

// Sorted by (severity, subject, code). Errors never throw.
Diagnostics validate_graph(const InstantiatedGraph& g);

// Elementary cycles of the temporal relation restricted to sibling groups,
// each rotated to start at its smallest id, the list sorted.
std::vector<std::vector<std::string>> detect_temporal_cycles(
    const InstantiatedGraph& g);

// Kahn order of `nodes` under the edges among them, ties by `rank` then id.
// Returns nullopt when the restriction is cyclic.
std::optional<std::vector<std::string>> topological_order(
    const std::vector<std::string>& nodes,
    const std::vector<TemporalEdge>& edges,
    const std::map<std::string, std::size_t>& rank);

GateVerdict evaluate_gate(GateKind kind, std::size_t members,
                          std::size_t occurred, bool terminal_source,
                          GateMode mode);

Result<std::vector<GateStatus>> check_gates(const InstantiatedGraph& g,
                                            GateMode mode = GateMode::kProgressive);

// (entity id, number of distinct events using it as a filler), count
// descending then id ascending; unused entities included.
std::vector<std::pair<std::string, std::size_t>> entity_occurrence_counts(
    const InstantiatedGraph& g);

}  // namespace ege
