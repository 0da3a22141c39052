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

#include "core/editor.hpp"

#include <algorithm>
#include <numeric>

namespace ege::editor {

namespace {

using formats::Json;

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

Diagnostic missing(const std::string& subject, const std::string& what) {
  return error("REF_MISSING", subject, what + " '" + subject + "' does not exist");
}

bool same_edge(const TemporalEdge& e, const std::string& before, const std::string& after) {
  return e.before == before && e.after == after;
}

bool has_edge(const InstantiatedGraph& g, const std::string& before, const std::string& after) {
  return std::any_of(g.temporal.begin(), g.temporal.end(),
                     [&](const TemporalEdge& e) { return same_edge(e, before, after); });
}

std::vector<Argument> sorted_rows(const std::vector<Argument>& args) {
  std::vector<Argument> rows = args;
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Argument& a, const Argument& b) { return a.order < b.order; });
  return rows;
}

// Each op mutates `g` in place or reports why it cannot.
class Applier {
 public:
  Applier(InstantiatedGraph& g, const provenance::CorpusIndex* corpus) : g_(g), corpus_(corpus) {}

  Diagnostics operator()(const UpdateEventFields& op) {
    EventNode* ev = g_.find_event(op.id);
    if (!ev) return {missing(op.id, "event")};
    if (op.name) ev->name = *op.name;
    if (op.description) ev->description = *op.description;
    if (op.event_type) ev->event_type = *op.event_type;
    return {};
  }

  Diagnostics operator()(const ReorderArguments& op) {
    EventNode* ev = g_.find_event(op.event);
    if (!ev) return {missing(op.event, "event")};
    const std::size_t n = ev->arguments.size();
    std::vector<std::int64_t> check = op.order;
    std::sort(check.begin(), check.end());
    std::vector<std::int64_t> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    if (check != identity)
      return {error("BAD_PERMUTATION", op.event,
                    "order must be a permutation of 0.." + std::to_string(n) + ")")};
    const auto rows = sorted_rows(ev->arguments);
    std::vector<Argument> out;
    for (std::size_t i = 0; i < n; ++i) {
      Argument a = rows[static_cast<std::size_t>(op.order[i])];
      a.order = rows[i].order;
      out.push_back(std::move(a));
    }
    ev->arguments = std::move(out);
    return {};
  }

  Diagnostics operator()(const AddArgument& op) {
    EventNode* ev = g_.find_event(op.event);
    if (!ev) return {missing(op.event, "event")};
    if (!g_.entities.count(op.entity)) return {missing(op.entity, "entity")};
    std::int64_t next = 0;
    for (const auto& a : ev->arguments) {
      if (a.role == op.role && a.filler == op.entity)
        return {error("DUPLICATE_ARGUMENT", op.event,
                      "argument " + op.role + " -> " + op.entity + " already present")};
      next = std::max(next, a.order + 1);
    }
    ev->arguments.push_back({op.role, op.entity, next});
    return {};
  }

  Diagnostics operator()(const RemoveArgument& op) {
    EventNode* ev = g_.find_event(op.event);
    if (!ev) return {missing(op.event, "event")};
    auto it = std::find_if(ev->arguments.begin(), ev->arguments.end(), [&](const Argument& a) {
      return a.role == op.role && a.filler == op.entity;
    });
    if (it == ev->arguments.end())
      return {error("REF_MISSING", op.event,
                    "argument " + op.role + " -> " + op.entity + " does not exist")};
    ev->arguments.erase(it);
    return {};
  }

  Diagnostics operator()(const AddTemporalEdge& op) {
    if (auto d = check_endpoints(op.before, op.after); !d.empty()) return d;
    if (has_edge(g_, op.before, op.after))
      return {error("DUPLICATE_EDGE", op.before, "edge " + op.before + " -> " + op.after +
                                                     " already exists")};
    g_.temporal.push_back({op.before, op.after});
    return {};
  }

  Diagnostics operator()(const RemoveTemporalEdge& op) {
    auto it = std::find_if(g_.temporal.begin(), g_.temporal.end(), [&](const TemporalEdge& e) {
      return same_edge(e, op.before, op.after);
    });
    if (it == g_.temporal.end())
      return {error("REF_MISSING", op.before,
                    "edge " + op.before + " -> " + op.after + " does not exist")};
    g_.temporal.erase(it);
    return {};
  }

  Diagnostics operator()(const ReverseTemporalEdge& op) {
    auto it = std::find_if(g_.temporal.begin(), g_.temporal.end(), [&](const TemporalEdge& e) {
      return same_edge(e, op.before, op.after);
    });
    if (it == g_.temporal.end())
      return {error("REF_MISSING", op.before,
                    "edge " + op.before + " -> " + op.after + " does not exist")};
    if (has_edge(g_, op.after, op.before))
      return {error("DUPLICATE_EDGE", op.after,
                    "edge " + op.after + " -> " + op.before + " already exists")};
    *it = TemporalEdge{op.after, op.before};
    return {};
  }

  Diagnostics operator()(const SetGate& op) {
    if (op.gate.id.empty()) return {error("GATE_ID_EMPTY", "", "gate id is empty")};
    if (!g_.events.count(op.gate.source)) return {missing(op.gate.source, "event")};
    for (const auto& m : op.gate.members)
      if (!g_.events.count(m)) return {missing(m, "event")};
    auto it = std::find_if(g_.gates.begin(), g_.gates.end(),
                           [&](const GateSpec& s) { return s.id == op.gate.id; });
    if (it == g_.gates.end())
      g_.gates.push_back(op.gate);
    else
      *it = op.gate;
    return {};
  }

  Diagnostics operator()(const RemoveGate& op) {
    auto it = std::find_if(g_.gates.begin(), g_.gates.end(),
                           [&](const GateSpec& s) { return s.id == op.gate; });
    if (it == g_.gates.end()) return {missing(op.gate, "gate")};
    g_.gates.erase(it);
    return {};
  }

  Diagnostics operator()(const ReparentEvent& op) {
    if (!g_.events.count(op.id)) return {missing(op.id, "event")};
    if (!op.parent.empty()) {
      if (!g_.events.count(op.parent)) return {missing(op.parent, "event")};
      if (op.parent == op.id)
        return {error("SELF_PARENT", op.id, "an event cannot be its own parent")};
      if (Hierarchy(g_).is_descendant(op.parent, op.id))
        return {error("WOULD_CYCLE", op.id,
                      "'" + op.parent + "' is a descendant of '" + op.id + "'")};
    }
    for (auto& [_, ev] : g_.events)
      ev.children.erase(std::remove(ev.children.begin(), ev.children.end(), op.id),
                        ev.children.end());
    g_.roots.erase(std::remove(g_.roots.begin(), g_.roots.end(), op.id), g_.roots.end());
    if (op.parent.empty())
      g_.roots.push_back(op.id);
    else
      g_.events.at(op.parent).children.push_back(op.id);
    return {};
  }

  Diagnostics operator()(const DeleteEvent& op) {
    if (!g_.events.count(op.id)) return {missing(op.id, "event")};
    std::set<std::string> doomed;
    std::vector<std::string> stack{op.id};
    while (!stack.empty()) {
      const std::string id = stack.back();
      stack.pop_back();
      const EventNode* ev = g_.find_event(id);
      if (!ev || !doomed.insert(id).second) continue;
      for (const auto& c : ev->children) stack.push_back(c);
    }
    std::set<std::string> schema_refs;
    for (const auto& id : doomed) {
      const EventNode& ev = g_.events.at(id);
      if (ev.status == EventStatus::kMatched && ev.schema_ref) schema_refs.insert(*ev.schema_ref);
      g_.events.erase(id);
    }
    auto gone = [&](const std::string& id) { return doomed.count(id) > 0; };
    for (auto& [_, ev] : g_.events)
      ev.children.erase(std::remove_if(ev.children.begin(), ev.children.end(), gone),
                        ev.children.end());
    g_.roots.erase(std::remove_if(g_.roots.begin(), g_.roots.end(), gone), g_.roots.end());
    g_.temporal.erase(std::remove_if(g_.temporal.begin(), g_.temporal.end(),
                                     [&](const TemporalEdge& e) {
                                       return gone(e.before) || gone(e.after);
                                     }),
                      g_.temporal.end());
    for (auto& gate : g_.gates)
      gate.members.erase(std::remove_if(gate.members.begin(), gate.members.end(), gone),
                         gate.members.end());
    g_.gates.erase(std::remove_if(g_.gates.begin(), g_.gates.end(),
                                  [&](const GateSpec& s) {
                                    return gone(s.source) || s.members.empty();
                                  }),
                   g_.gates.end());
    g_.match_pairs.erase(std::remove_if(g_.match_pairs.begin(), g_.match_pairs.end(),
                                        [&](const MatchPair& p) {
                                          return schema_refs.count(p.schema) > 0;
                                        }),
                         g_.match_pairs.end());
    return {};
  }

  Diagnostics operator()(const MergeEntities& op) {
    if (!g_.entities.count(op.keep)) return {missing(op.keep, "entity")};
    if (!g_.entities.count(op.drop)) return {missing(op.drop, "entity")};
    if (op.keep == op.drop)
      return {error("SELF_MERGE", op.keep, "an entity cannot be merged into itself")};
    for (auto& [_, ev] : g_.events) {
      std::vector<Argument> rows;
      for (auto a : ev.arguments) {
        if (a.filler == op.drop) a.filler = op.keep;
        const bool dup = std::any_of(rows.begin(), rows.end(), [&](const Argument& r) {
          return r.role == a.role && r.filler == a.filler;
        });
        if (!dup) rows.push_back(std::move(a));
      }
      ev.arguments = std::move(rows);
    }
    EntityNode& keep = g_.entities.at(op.keep);
    for (const auto& p : g_.entities.at(op.drop).provenance)
      if (std::find(keep.provenance.begin(), keep.provenance.end(), p) == keep.provenance.end())
        keep.provenance.push_back(p);
    g_.entities.erase(op.drop);
    return {};
  }

  Diagnostics operator()(const UpdateTextSpan& op) {
    auto it = g_.provenance.find(op.provenance);
    if (it == g_.provenance.end()) return {missing(op.provenance, "provenance")};
    auto* t = std::get_if<TextProvenance>(&it->second);
    if (!t) return {error("NOT_TEXT", op.provenance, "record is not a text span")};
    if (!corpus_) return {error("NO_CORPUS", op.provenance, "span edits need a loaded corpus")};
    Diagnostics d = provenance::check_span(*corpus_, op.provenance, t->doc_id, op.start, op.end);
    for (auto& x : d)
      if (x.code == "OFFSET_ORDER" || x.code == "OFFSET_RANGE") x.code = "INVALID_SPAN";
    if (!d.empty()) return d;
    t->start = op.start;
    t->end = op.end;
    t->text = std::string(corpus_->document(t->doc_id)->text.slice(
        static_cast<std::size_t>(op.start), static_cast<std::size_t>(op.end)));
    return {};
  }

  Diagnostics operator()(const UpdateBoundingBox& op) {
    auto it = g_.provenance.find(op.provenance);
    if (it == g_.provenance.end()) return {missing(op.provenance, "provenance")};
    auto* im = std::get_if<ImageProvenance>(&it->second);
    if (!im) return {error("NOT_IMAGE", op.provenance, "record is not an image box")};
    if (corpus_) {
      if (auto d = provenance::check_bbox(*corpus_, op.provenance, im->image_id, op.bbox);
          !d.empty())
        return d;
    } else if (op.bbox.w <= 0 || op.bbox.h <= 0 || op.bbox.x < 0 || op.bbox.y < 0) {
      return {error("INVALID_BBOX", op.provenance, "bounding box needs x, y >= 0 and w, h > 0")};
    }
    im->bbox = op.bbox;
    return {};
  }

 private:
  Diagnostics check_endpoints(const std::string& before, const std::string& after) {
    if (!g_.events.count(before)) return {missing(before, "event")};
    if (!g_.events.count(after)) return {missing(after, "event")};
    if (before == after)
      return {error("SELF_EDGE", before, "an event cannot precede itself")};
    return {};
  }

  InstantiatedGraph& g_;
  const provenance::CorpusIndex* corpus_;
};

template <class K, class V>
void diff_map(const std::map<K, V>& before, const std::map<K, V>& after,
              std::map<K, std::optional<V>>& out) {
  for (const auto& [k, v] : before) {
    auto it = after.find(k);
    if (it == after.end() || !(it->second == v)) out.emplace(k, v);
  }
  for (const auto& [k, _] : after)
    if (!before.count(k)) out.emplace(k, std::nullopt);
}

template <class K, class V>
void patch_map(std::map<K, V>& m, const std::map<K, std::optional<V>>& p) {
  for (const auto& [k, v] : p) {
    if (v)
      m.insert_or_assign(k, *v);
    else
      m.erase(k);
  }
}

template <class T>
void diff_field(const T& before, const T& after, std::optional<T>& out) {
  if (!(before == after)) out = before;
}

}  // namespace

const char* op_name(const EditOp& op) {
  return std::visit(
      Overload{[](const UpdateEventFields&) { return "UpdateEventFields"; },
               [](const ReorderArguments&) { return "ReorderArguments"; },
               [](const AddArgument&) { return "AddArgument"; },
               [](const RemoveArgument&) { return "RemoveArgument"; },
               [](const AddTemporalEdge&) { return "AddTemporalEdge"; },
               [](const RemoveTemporalEdge&) { return "RemoveTemporalEdge"; },
               [](const ReverseTemporalEdge&) { return "ReverseTemporalEdge"; },
               [](const SetGate&) { return "SetGate"; },
               [](const RemoveGate&) { return "RemoveGate"; },
               [](const ReparentEvent&) { return "ReparentEvent"; },
               [](const DeleteEvent&) { return "DeleteEvent"; },
               [](const MergeEntities&) { return "MergeEntities"; },
               [](const UpdateTextSpan&) { return "UpdateTextSpan"; },
               [](const UpdateBoundingBox&) { return "UpdateBoundingBox"; }},
      op);
}

Json to_json(const EditOp& op) {
  Json j = Json::object();
  j["op"] = op_name(op);
  std::visit(
      Overload{
          [&](const UpdateEventFields& o) {
            j["id"] = o.id;
            if (o.name) j["name"] = *o.name;
            if (o.description) j["description"] = *o.description;
            if (o.event_type) j["event_type"] = formats::to_json(*o.event_type);
          },
          [&](const ReorderArguments& o) {
            j["event"] = o.event;
            j["order"] = o.order;
          },
          [&](const AddArgument& o) {
            j["event"] = o.event;
            j["role"] = o.role;
            j["entity"] = o.entity;
          },
          [&](const RemoveArgument& o) {
            j["event"] = o.event;
            j["role"] = o.role;
            j["entity"] = o.entity;
          },
          [&](const AddTemporalEdge& o) {
            j["before"] = o.before;
            j["after"] = o.after;
          },
          [&](const RemoveTemporalEdge& o) {
            j["before"] = o.before;
            j["after"] = o.after;
          },
          [&](const ReverseTemporalEdge& o) {
            j["before"] = o.before;
            j["after"] = o.after;
          },
          [&](const SetGate& o) { j["gate"] = formats::to_json(o.gate); },
          [&](const RemoveGate& o) { j["gate"] = o.gate; },
          [&](const ReparentEvent& o) {
            j["id"] = o.id;
            j["parent"] = o.parent.empty() ? Json(nullptr) : Json(o.parent);
          },
          [&](const DeleteEvent& o) { j["id"] = o.id; },
          [&](const MergeEntities& o) {
            j["keep"] = o.keep;
            j["drop"] = o.drop;
          },
          [&](const UpdateTextSpan& o) {
            j["provenance"] = o.provenance;
            j["start"] = o.start;
            j["end"] = o.end;
          },
          [&](const UpdateBoundingBox& o) {
            j["provenance"] = o.provenance;
            j["bbox"] = formats::to_json(o.bbox);
          }},
      op);
  return j;
}

Result<EditOp> op_from_json(const Json& j, const std::string& path) {
  Diagnostics d;
  formats::JsonReader r(d);
  if (!r.expect_object(j, path)) return d;
  std::string name;
  if (!r.read(j, "op", path, name)) return d;
  const std::string sub = path.empty() ? std::string() : path;
  auto done = [&](EditOp op) -> Result<EditOp> {
    if (has_errors(d)) return d;
    return op;
  };
  auto pair = [&](auto op) -> Result<EditOp> {
    r.read(j, "before", sub, op.before);
    r.read(j, "after", sub, op.after);
    return done(op);
  };
  auto argument = [&](auto op) -> Result<EditOp> {
    r.read(j, "event", sub, op.event);
    r.read(j, "role", sub, op.role);
    r.read(j, "entity", sub, op.entity);
    return done(op);
  };

  if (name == "UpdateEventFields") {
    UpdateEventFields op;
    r.read(j, "id", sub, op.id);
    std::string s;
    if (r.has(j, "name") && r.read(j, "name", sub, s)) op.name = s;
    if (r.has(j, "description") && r.read(j, "description", sub, s)) op.description = s;
    if (r.has(j, "event_type")) {
      EventType t;
      if (r.read_event_type(j.at("event_type"), sub + "/event_type", t)) op.event_type = t;
    }
    return done(op);
  }
  if (name == "ReorderArguments") {
    ReorderArguments op;
    r.read(j, "event", sub, op.event);
    if (!r.has(j, "order") || !j.at("order").is_array() ||
        !std::all_of(j.at("order").begin(), j.at("order").end(),
                     [](const Json& v) { return v.is_number_integer(); }))
      r.fail(sub + "/order", "expected an array of integers");
    else
      op.order = j.at("order").get<std::vector<std::int64_t>>();
    return done(op);
  }
  if (name == "AddArgument") return argument(AddArgument{});
  if (name == "RemoveArgument") return argument(RemoveArgument{});
  if (name == "AddTemporalEdge") return pair(AddTemporalEdge{});
  if (name == "RemoveTemporalEdge") return pair(RemoveTemporalEdge{});
  if (name == "ReverseTemporalEdge") return pair(ReverseTemporalEdge{});
  if (name == "SetGate") {
    SetGate op;
    if (!r.has(j, "gate"))
      r.fail(sub + "/gate", "missing required field");
    else
      r.read_gate(j.at("gate"), sub + "/gate", op.gate);
    return done(op);
  }
  if (name == "RemoveGate") {
    RemoveGate op;
    r.read(j, "gate", sub, op.gate);
    return done(op);
  }
  if (name == "ReparentEvent") {
    ReparentEvent op;
    r.read(j, "id", sub, op.id);
    if (r.has(j, "parent") && !j.at("parent").is_null()) r.read(j, "parent", sub, op.parent);
    return done(op);
  }
  if (name == "DeleteEvent") {
    DeleteEvent op;
    r.read(j, "id", sub, op.id);
    return done(op);
  }
  if (name == "MergeEntities") {
    MergeEntities op;
    r.read(j, "keep", sub, op.keep);
    r.read(j, "drop", sub, op.drop);
    return done(op);
  }
  if (name == "UpdateTextSpan") {
    UpdateTextSpan op;
    r.read(j, "provenance", sub, op.provenance);
    r.read(j, "start", sub, op.start);
    r.read(j, "end", sub, op.end);
    return done(op);
  }
  if (name == "UpdateBoundingBox") {
    UpdateBoundingBox op;
    r.read(j, "provenance", sub, op.provenance);
    if (!r.has(j, "bbox"))
      r.fail(sub + "/bbox", "missing required field");
    else
      r.read_bbox(j.at("bbox"), sub + "/bbox", op.bbox);
    return done(op);
  }
  return error("UNKNOWN_OP", name, "unknown edit op '" + name + "'", sub + "/op");
}

Patch diff(const InstantiatedGraph& before, const InstantiatedGraph& after) {
  Patch p;
  diff_map(before.events, after.events, p.events);
  diff_map(before.entities, after.entities, p.entities);
  diff_map(before.provenance, after.provenance, p.provenance);
  diff_field(before.temporal, after.temporal, p.temporal);
  diff_field(before.gates, after.gates, p.gates);
  diff_field(before.roots, after.roots, p.roots);
  diff_field(before.match_pairs, after.match_pairs, p.match_pairs);
  diff_field(before.schema_order, after.schema_order, p.schema_order);
  return p;
}

void apply_patch(InstantiatedGraph& g, const Patch& p) {
  patch_map(g.events, p.events);
  patch_map(g.entities, p.entities);
  patch_map(g.provenance, p.provenance);
  if (p.temporal) g.temporal = *p.temporal;
  if (p.gates) g.gates = *p.gates;
  if (p.roots) g.roots = *p.roots;
  if (p.match_pairs) g.match_pairs = *p.match_pairs;
  if (p.schema_order) g.schema_order = *p.schema_order;
}

Result<InstantiatedGraph> apply_op(const InstantiatedGraph& g, const EditOp& op,
                                   const provenance::CorpusIndex* corpus) {
  InstantiatedGraph next = g;
  Applier applier(next, corpus);
  if (Diagnostics d = std::visit(applier, op); !d.empty()) return d;

  const auto cycles_before = detect_temporal_cycles(g);
  for (const auto& cycle : detect_temporal_cycles(next)) {
    if (std::find(cycles_before.begin(), cycles_before.end(), cycle) != cycles_before.end())
      continue;
    std::string path;
    for (const auto& id : cycle) path += id + " -> ";
    return error("WOULD_CYCLE", cycle.front(),
                 std::string(op_name(op)) + " would create temporal cycle " + path +
                     cycle.front());
  }

  // Reject anything that breaks an invariant the graph satisfied before.
  const Diagnostics prior = validate_graph(g);
  Diagnostics introduced;
  for (auto& d : validate_graph(next))
    if (d.severity == Severity::kError &&
        std::find(prior.begin(), prior.end(), d) == prior.end())
      introduced.push_back(std::move(d));
  if (!introduced.empty()) return introduced;
  return next;
}

EditSession::EditSession(InstantiatedGraph base,
                         std::shared_ptr<const provenance::CorpusIndex> corpus)
    : base_(std::make_shared<const InstantiatedGraph>(std::move(base))),
      current_(base_),
      corpus_(std::move(corpus)) {}

Result<std::size_t> EditSession::apply_batch(const std::vector<EditOp>& ops) {
  InstantiatedGraph scratch = *current_;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    auto next = apply_op(scratch, ops[i], corpus_.get());
    if (!next) {
      Diagnostics d = next.diagnostics();
      d.push_back(error("ATOMICITY_ABORT", std::to_string(i),
                        std::string("batch aborted at op ") + std::to_string(i) + " (" +
                            op_name(ops[i]) + "); nothing was committed"));
      return d;
    }
    scratch = std::move(next).value();
  }
  Patch inverse = diff(*current_, scratch);
  revisions_.resize(cursor_);
  revisions_.push_back({ops, std::move(inverse)});
  current_ = std::make_shared<const InstantiatedGraph>(std::move(scratch));
  return ++cursor_;
}

Result<std::size_t> EditSession::undo() {
  if (cursor_ == 0) return error("AT_BOUNDARY", "", "nothing to undo");
  InstantiatedGraph g = *current_;
  apply_patch(g, revisions_[cursor_ - 1].inverse);
  current_ = std::make_shared<const InstantiatedGraph>(std::move(g));
  return --cursor_;
}

Result<std::size_t> EditSession::redo() {
  if (cursor_ == revisions_.size()) return error("AT_BOUNDARY", "", "nothing to redo");
  InstantiatedGraph g = *current_;
  for (const auto& op : revisions_[cursor_].ops) {
    auto next = apply_op(g, op, corpus_.get());
    // The ops succeeded on this exact state before, so this cannot fail.
    if (!next) return next.diagnostics();
    g = std::move(next).value();
  }
  current_ = std::make_shared<const InstantiatedGraph>(std::move(g));
  return ++cursor_;
}

Result<std::set<std::string>> filter_by_entity(const InstantiatedGraph& g,
                                               const std::string& entity) {
  if (!g.entities.count(entity)) return missing(entity, "entity");
  std::set<std::string> out;
  for (const auto& [id, ev] : g.events)
    for (const auto& a : ev.arguments)
      if (a.filler == entity) out.insert(id);
  return out;
}

Result<std::set<std::string>> filter_by_confidence(const InstantiatedGraph& g, double lo,
                                                   double hi) {
  if (!(0.0 <= lo && lo <= hi && hi <= 1.0))
    return error("BAD_RANGE", "", "need 0 <= lo <= hi <= 1");
  std::set<std::string> out;
  for (const auto& [id, ev] : g.events)
    if (lo <= ev.confidence && ev.confidence <= hi) out.insert(id);
  return out;
}

}  // namespace ege::editor
