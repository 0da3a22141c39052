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

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/formats.hpp"
#include "core/model.hpp"
#include "core/provenance.hpp"

namespace ege::editor {

struct UpdateEventFields {
  std::string id;
  std::optional<std::string> name;
  std::optional<std::string> description;
  std::optional<EventType> event_type;
  bool operator==(const UpdateEventFields&) const = default;
};

// `order[i]` is the index, among the rows sorted by their current order, of
// the row that moves to position i. Rows keep the existing set of order values.
struct ReorderArguments {
  std::string event;
  std::vector<std::int64_t> order;
  bool operator==(const ReorderArguments&) const = default;
};

struct AddArgument {
  std::string event;
  std::string role;
  std::string entity;
  bool operator==(const AddArgument&) const = default;
};

struct RemoveArgument {
  std::string event;
  std::string role;
  std::string entity;
  bool operator==(const RemoveArgument&) const = default;
};

struct AddTemporalEdge {
  std::string before;
  std::string after;
  bool operator==(const AddTemporalEdge&) const = default;
};

struct RemoveTemporalEdge {
  std::string before;
  std::string after;
  bool operator==(const RemoveTemporalEdge&) const = default;
};

struct ReverseTemporalEdge {
  std::string before;
  std::string after;
  bool operator==(const ReverseTemporalEdge&) const = default;
};

// Replaces the gate with the same id, or appends a new one.
struct SetGate {
  GateSpec gate;
  bool operator==(const SetGate&) const = default;
};

struct RemoveGate {
  std::string gate;
  bool operator==(const RemoveGate&) const = default;
};

// An empty parent moves the event to the top level.
struct ReparentEvent {
  std::string id;
  std::string parent;
  bool operator==(const ReparentEvent&) const = default;
};

struct DeleteEvent {
  std::string id;
  bool operator==(const DeleteEvent&) const = default;
};

struct MergeEntities {
  std::string keep;
  std::string drop;
  bool operator==(const MergeEntities&) const = default;
};

struct UpdateTextSpan {
  std::string provenance;
  std::int64_t start = 0;
  std::int64_t end = 0;
  bool operator==(const UpdateTextSpan&) const = default;
};

struct UpdateBoundingBox {
  std::string provenance;
  BoundingBox bbox;
  bool operator==(const UpdateBoundingBox&) const = default;
};

using EditOp =
    std::variant<UpdateEventFields, ReorderArguments, AddArgument, RemoveArgument,
                 AddTemporalEdge, RemoveTemporalEdge, ReverseTemporalEdge, SetGate, RemoveGate,
                 ReparentEvent, DeleteEvent, MergeEntities, UpdateTextSpan, UpdateBoundingBox>;

const char* op_name(const EditOp& op);

formats::Json to_json(const EditOp& op);
// Errors: SYNTAX, UNKNOWN_OP.
Result<EditOp> op_from_json(const formats::Json& j, const std::string& path = "");

// Prior values of everything an edit touched. Applying it to the post-edit
// graph yields the pre-edit graph exactly.
struct Patch {
  std::map<std::string, std::optional<EventNode>> events;
  std::map<std::string, std::optional<EntityNode>> entities;
  std::map<std::string, std::optional<Provenance>> provenance;
  std::optional<std::vector<TemporalEdge>> temporal;
  std::optional<std::vector<GateSpec>> gates;
  std::optional<std::vector<std::string>> roots;
  std::optional<std::vector<MatchPair>> match_pairs;
  std::optional<std::vector<std::string>> schema_order;
  bool operator==(const Patch&) const = default;
};

// Patch that turns `after` back into `before`.
Patch diff(const InstantiatedGraph& before, const InstantiatedGraph& after);
void apply_patch(InstantiatedGraph& g, const Patch& p);

// Pure application of one op. Span and box edits need `corpus`.
// Errors: REF_MISSING, SELF_EDGE, SELF_PARENT, DUPLICATE_EDGE, DUPLICATE_ARGUMENT,
// WOULD_CYCLE, BAD_PERMUTATION, NOT_TEXT, NOT_IMAGE, INVALID_SPAN, INVALID_BBOX,
// NO_CORPUS, plus any validate_graph error the op would introduce.
Result<InstantiatedGraph> apply_op(const InstantiatedGraph& g, const EditOp& op,
                                   const provenance::CorpusIndex* corpus = nullptr);

// One committed batch.
struct Revision {
  std::vector<EditOp> ops;
  Patch inverse;
};

// Linear revision history over an instantiated graph. Not thread-safe; the
// service serializes writers. Readers hold snapshots from current().
class EditSession {
 public:
  explicit EditSession(InstantiatedGraph base,
                       std::shared_ptr<const provenance::CorpusIndex> corpus = nullptr);

  const InstantiatedGraph& base() const { return *base_; }
  std::shared_ptr<const InstantiatedGraph> current() const { return current_; }
  std::size_t cursor() const { return cursor_; }
  const std::vector<Revision>& revisions() const { return revisions_; }

  // Applies the ops in order as one revision, or none of them.
  // Errors: the failing op's diagnostics plus ATOMICITY_ABORT naming its index.
  Result<std::size_t> apply_batch(const std::vector<EditOp>& ops);
  Result<std::size_t> apply(const EditOp& op) { return apply_batch({op}); }

  // Errors: AT_BOUNDARY.
  Result<std::size_t> undo();
  Result<std::size_t> redo();

 private:
  std::shared_ptr<const InstantiatedGraph> base_;
  std::shared_ptr<const InstantiatedGraph> current_;
  std::shared_ptr<const provenance::CorpusIndex> corpus_;
  std::vector<Revision> revisions_;
  std::size_t cursor_ = 0;
};

// Events having `entity` as an argument filler. Errors: REF_MISSING.
Result<std::set<std::string>> filter_by_entity(const InstantiatedGraph& g,
                                               const std::string& entity);
// Events with lo <= confidence <= hi. Errors: BAD_RANGE.
Result<std::set<std::string>> filter_by_confidence(const InstantiatedGraph& g, double lo,
                                                   double hi);

}  // namespace ege::editor
