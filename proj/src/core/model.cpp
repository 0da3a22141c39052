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

#include "core/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <tuple>

namespace ege {

const char* to_string(EventStatus s) {
  switch (s) {
    case EventStatus::kMatched: return "matched";
    case EventStatus::kSourceOnly: return "source-only";
    case EventStatus::kPredicted: return "predicted";
  }
  return "?";
}

const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::kAnd: return "AND";
    case GateKind::kOr: return "OR";
    case GateKind::kXor: return "XOR";
  }
  return "?";
}

const char* to_string(GatePlacement p) {
  return p == GatePlacement::kChildren ? "children" : "successors";
}

const char* to_string(GateVerdict v) {
  switch (v) {
    case GateVerdict::kSatisfied: return "satisfied";
    case GateVerdict::kPending: return "pending";
    case GateVerdict::kViolated: return "violated";
  }
  return "?";
}

std::optional<EventStatus> parse_event_status(std::string_view s) {
  if (s == "matched") return EventStatus::kMatched;
  if (s == "source-only") return EventStatus::kSourceOnly;
  if (s == "predicted") return EventStatus::kPredicted;
  return std::nullopt;
}

std::optional<GateKind> parse_gate_kind(std::string_view s) {
  if (s == "AND") return GateKind::kAnd;
  if (s == "OR") return GateKind::kOr;
  if (s == "XOR") return GateKind::kXor;
  return std::nullopt;
}

std::optional<GatePlacement> parse_gate_placement(std::string_view s) {
  if (s == "children") return GatePlacement::kChildren;
  if (s == "successors") return GatePlacement::kSuccessors;
  return std::nullopt;
}

const std::string& provenance_id(const Provenance& p) {
  return std::visit([](const auto& r) -> const std::string& { return r.id; },
                    p);
}

const EventNode* InstantiatedGraph::find_event(const std::string& id) const {
  auto it = events.find(id);
  return it == events.end() ? nullptr : &it->second;
}

EventNode* InstantiatedGraph::find_event(const std::string& id) {
  auto it = events.find(id);
  return it == events.end() ? nullptr : &it->second;
}

const GateSpec* InstantiatedGraph::find_gate(const std::string& id) const {
  for (const auto& gate : gates)
    if (gate.id == id) return &gate;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Hierarchy

namespace {
const std::string kNoParent;
}

Hierarchy::Hierarchy(const InstantiatedGraph& g) {
  for (const auto& [id, ev] : g.events) {
    for (const auto& child : ev.children) {
      if (child == id || !g.events.count(child)) continue;
      parent_.emplace(child, id);  // first parent in id order wins
    }
  }
  for (const auto& [id, ev] : g.events) groups_[parent_of(id)].push_back(id);
}

const std::string& Hierarchy::parent_of(const std::string& id) const {
  auto it = parent_.find(id);
  return it == parent_.end() ? kNoParent : it->second;
}

bool Hierarchy::is_top_level(const std::string& id) const {
  return !parent_.count(id);
}

bool Hierarchy::same_group(const std::string& a, const std::string& b) const {
  return parent_of(a) == parent_of(b);
}

std::size_t Hierarchy::depth(const std::string& id) const {
  std::size_t d = 0;
  const std::string* cur = &id;
  // Bounded by the number of events so hierarchy cycles terminate.
  while (!is_top_level(*cur) && d <= parent_.size()) {
    cur = &parent_of(*cur);
    ++d;
  }
  return d;
}

bool Hierarchy::is_descendant(const std::string& id,
                              const std::string& ancestor) const {
  const std::string* cur = &id;
  for (std::size_t steps = 0; steps <= parent_.size(); ++steps) {
    if (is_top_level(*cur)) return false;
    cur = &parent_of(*cur);
    if (*cur == ancestor) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Temporal cycles

namespace {

using Adjacency = std::map<std::string, std::set<std::string>>;

Adjacency group_adjacency(const InstantiatedGraph& g, const Hierarchy& h) {
  Adjacency adj;
  for (const auto& e : g.temporal) {
    if (e.before == e.after) continue;
    if (!g.events.count(e.before) || !g.events.count(e.after)) continue;
    if (!h.same_group(e.before, e.after)) continue;
    adj[e.before].insert(e.after);
  }
  return adj;
}

// Every simple cycle whose smallest vertex is `start`, visiting only vertices
// greater than `start`.
void cycles_from(const std::string& start, const Adjacency& adj,
                 std::vector<std::string>& path, std::set<std::string>& on_path,
                 std::vector<std::vector<std::string>>& out) {
  auto it = adj.find(path.back());
  if (it == adj.end()) return;
  for (const auto& next : it->second) {
    if (next == start) {
      out.push_back(path);
    } else if (next > start && !on_path.count(next)) {
      path.push_back(next);
      on_path.insert(next);
      cycles_from(start, adj, path, on_path, out);
      on_path.erase(next);
      path.pop_back();
    }
  }
}

}  // namespace

std::vector<std::vector<std::string>> detect_temporal_cycles(
    const InstantiatedGraph& g) {
  const Hierarchy h(g);
  const Adjacency adj = group_adjacency(g, h);
  std::vector<std::vector<std::string>> cycles;
  for (const auto& [start, _] : adj) {
    std::vector<std::string> path{start};
    std::set<std::string> on_path{start};
    cycles_from(start, adj, path, on_path, cycles);
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

std::optional<std::vector<std::string>> topological_order(
    const std::vector<std::string>& nodes,
    const std::vector<TemporalEdge>& edges,
    const std::map<std::string, std::size_t>& rank) {
  const std::set<std::string> in_set(nodes.begin(), nodes.end());
  std::map<std::string, std::set<std::string>> out;
  std::map<std::string, std::size_t> indegree;
  for (const auto& n : nodes) indegree[n] = 0;
  for (const auto& e : edges) {
    if (e.before == e.after) continue;
    if (!in_set.count(e.before) || !in_set.count(e.after)) continue;
    if (out[e.before].insert(e.after).second) ++indegree[e.after];
  }
  using Key = std::tuple<std::size_t, std::string>;
  auto key_of = [&](const std::string& id) -> Key {
    auto it = rank.find(id);
    return {it == rank.end() ? rank.size() : it->second, id};
  };
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (const auto& [n, d] : indegree)
    if (d == 0) ready.push(key_of(n));
  std::vector<std::string> order;
  order.reserve(in_set.size());
  while (!ready.empty()) {
    const std::string id = std::get<1>(ready.top());
    ready.pop();
    order.push_back(id);
    for (const auto& next : out[id])
      if (--indegree[next] == 0) ready.push(key_of(next));
  }
  if (order.size() != in_set.size()) return std::nullopt;
  return order;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string join(const std::vector<std::string>& ids, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += ids[i];
  }
  return out;
}

void validate_events(const InstantiatedGraph& g, Diagnostics& d) {
  std::map<std::string, std::vector<std::string>> parents;
  for (const auto& [key, ev] : g.events) {
    if (ev.id != key)
      d.push_back(error("EVENT_ID_MISMATCH", key,
                        "event stored under '" + key + "' has id '" + ev.id + "'"));
    if (!(ev.confidence >= 0.0 && ev.confidence <= 1.0))
      d.push_back(error("CONFIDENCE_RANGE", key, "confidence outside [0,1]"));

    switch (ev.status) {
      case EventStatus::kPredicted:
        if (!ev.provenance.empty())
          d.push_back(error("PREDICTED_PROVENANCE", key,
                            "predicted event carries provenance"));
        if (!ev.schema_ref)
          d.push_back(error("MISSING_SCHEMA_REF", key,
                            "predicted event has no schema reference"));
        break;
      case EventStatus::kSourceOnly:
        if (ev.schema_ref)
          d.push_back(error("SOURCE_ONLY_SCHEMA_REF", key,
                            "source-only event references schema event '" +
                                *ev.schema_ref + "'"));
        break;
      case EventStatus::kMatched:
        if (!ev.schema_ref)
          d.push_back(error("MISSING_SCHEMA_REF", key,
                            "matched event has no schema reference"));
        if (ev.provenance.empty())
          d.push_back(error("MATCHED_NO_PROVENANCE", key,
                            "matched event has no provenance"));
        break;
    }

    std::set<std::string> seen_children;
    for (const auto& child : ev.children) {
      if (child == key) {
        d.push_back(error("CHILD_SELF", key, "event lists itself as a child"));
        continue;
      }
      if (!seen_children.insert(child).second) {
        d.push_back(error("CHILD_DUPLICATE", key, "child '" + child + "' listed twice"));
        continue;
      }
      if (!g.events.count(child)) {
        d.push_back(error("CHILD_MISSING", key, "child '" + child + "' does not exist"));
        continue;
      }
      parents[child].push_back(key);
    }

    std::set<std::pair<std::string, std::string>> role_fillers;
    std::set<std::int64_t> orders;
    for (const auto& arg : ev.arguments) {
      if (!g.entities.count(arg.filler))
        d.push_back(error("ARG_FILLER_MISSING", key,
                          "argument '" + arg.role + "' filler '" + arg.filler +
                              "' is not an entity"));
      if (!role_fillers.emplace(arg.role, arg.filler).second)
        d.push_back(error("ARG_DUPLICATE", key,
                          "argument (" + arg.role + ", " + arg.filler + ") repeated"));
      if (arg.order < 0)
        d.push_back(error("ARG_ORDER_NEGATIVE", key, "argument order is negative"));
      if (!orders.insert(arg.order).second)
        d.push_back(error("ARG_ORDER_DUPLICATE", key,
                          "argument order " + std::to_string(arg.order) + " repeated"));
    }
    for (const auto& pid : ev.provenance)
      if (!g.provenance.count(pid))
        d.push_back(error("PROVENANCE_MISSING", key,
                          "provenance '" + pid + "' does not resolve"));
  }
  for (const auto& [child, ps] : parents)
    if (ps.size() > 1)
      d.push_back(error("MULTIPLE_PARENTS", child,
                        "event has parents " + join(ps, ", ")));
}

void validate_hierarchy(const InstantiatedGraph& g, const Hierarchy& h,
                        Diagnostics& d) {
  // Hierarchy cycles: walking up from any member of a cycle never reaches
  // the top level. Report each cycle once, under its smallest id.
  std::set<std::string> reported;
  for (const auto& [id, _] : g.events) {
    std::vector<std::string> chain{id};
    std::set<std::string> seen{id};
    const std::string* cur = &id;
    while (!h.is_top_level(*cur)) {
      cur = &h.parent_of(*cur);
      if (seen.count(*cur)) {
        auto start = std::find(chain.begin(), chain.end(), *cur);
        std::vector<std::string> cycle(start, chain.end());
        std::sort(cycle.begin(), cycle.end());
        if (reported.insert(cycle.front()).second)
          d.push_back(error("HIERARCHY_CYCLE", cycle.front(),
                            "hierarchy cycle through " + join(cycle, ", ")));
        break;
      }
      seen.insert(*cur);
      chain.push_back(*cur);
    }
  }

  std::set<std::string> roots;
  for (const auto& r : g.roots) {
    if (!roots.insert(r).second) {
      d.push_back(error("ROOT_DUPLICATE", r, "root listed twice"));
      continue;
    }
    if (!g.events.count(r))
      d.push_back(error("ROOT_MISSING", r, "root does not exist"));
    else if (!h.is_top_level(r))
      d.push_back(error("ROOT_HAS_PARENT", r,
                        "root is a child of '" + h.parent_of(r) + "'"));
  }
  for (const auto& [id, _] : g.events)
    if (h.is_top_level(id) && !roots.count(id))
      d.push_back(error("ROOT_UNLISTED", id, "top-level event missing from roots"));
}

void validate_temporal(const InstantiatedGraph& g, Diagnostics& d) {
  std::set<TemporalEdge> seen;
  for (const auto& e : g.temporal) {
    const std::string label = e.before + "->" + e.after;
    if (e.before == e.after)
      d.push_back(error("TEMPORAL_SELF", e.before, "self-loop " + label));
    if (!seen.insert(e).second)
      d.push_back(error("TEMPORAL_DUPLICATE", e.before, "duplicate edge " + label));
    for (const auto* end : {&e.before, &e.after})
      if (!g.events.count(*end))
        d.push_back(error("TEMPORAL_ENDPOINT", *end,
                          "edge " + label + " references a missing event"));
  }
  for (const auto& cycle : detect_temporal_cycles(g))
    d.push_back(error("TEMPORAL_CYCLE", cycle.front(),
                      "temporal cycle " + join(cycle, " -> ")));
}

void validate_gates(const InstantiatedGraph& g, Diagnostics& d) {
  std::set<std::string> ids;
  std::set<TemporalEdge> edges(g.temporal.begin(), g.temporal.end());
  for (const auto& gate : g.gates) {
    if (gate.id.empty())
      d.push_back(error("GATE_ID_EMPTY", gate.source, "gate without id"));
    else if (!ids.insert(gate.id).second)
      d.push_back(error("GATE_ID_DUPLICATE", gate.id, "gate id repeated"));
    if (g.events.count(gate.id))
      d.push_back(error("GATE_ID_COLLISION", gate.id, "gate id equals an event id"));
    const EventNode* source = g.find_event(gate.source);
    if (!source)
      d.push_back(error("GATE_UNKNOWN_SOURCE", gate.id,
                        "source '" + gate.source + "' does not exist"));
    if (gate.members.empty())
      d.push_back(error("GATE_ARITY", gate.id, "gate has no members"));
    std::set<std::string> members;
    for (const auto& m : gate.members) {
      if (!members.insert(m).second) {
        d.push_back(error("GATE_DUPLICATE_MEMBER", gate.id, "member '" + m + "' repeated"));
        continue;
      }
      if (!g.events.count(m)) {
        d.push_back(error("GATE_UNKNOWN_MEMBER", gate.id,
                          "member '" + m + "' does not exist"));
        continue;
      }
      if (!source) continue;
      const bool consistent =
          gate.placement == GatePlacement::kChildren
              ? std::find(source->children.begin(), source->children.end(), m) !=
                    source->children.end()
              : edges.count(TemporalEdge{gate.source, m}) > 0;
      if (!consistent)
        d.push_back(error("GATE_PLACEMENT", gate.id,
                          "member '" + m + "' is not a " +
                              (gate.placement == GatePlacement::kChildren
                                   ? "child"
                                   : "temporal successor") +
                              " of '" + gate.source + "'"));
    }
  }
}

void validate_entities(const InstantiatedGraph& g, Diagnostics& d) {
  for (const auto& [key, ent] : g.entities) {
    if (ent.id != key)
      d.push_back(error("ENTITY_ID_MISMATCH", key,
                        "entity stored under '" + key + "' has id '" + ent.id + "'"));
    if (ent.name.empty())
      d.push_back(error("ENTITY_NAME_EMPTY", key, "entity name is empty"));
    for (const auto& pid : ent.provenance)
      if (!g.provenance.count(pid))
        d.push_back(error("PROVENANCE_MISSING", key,
                          "provenance '" + pid + "' does not resolve"));
  }
}

void validate_provenance(const InstantiatedGraph& g, Diagnostics& d) {
  for (const auto& [key, rec] : g.provenance) {
    if (provenance_id(rec) != key)
      d.push_back(error("PROVENANCE_ID_MISMATCH", key, "record id differs from key"));
    if (const auto* t = std::get_if<TextProvenance>(&rec)) {
      if (t->start < 0 || t->start >= t->end)
        d.push_back(error("OFFSET_ORDER", key, "span requires 0 <= start < end"));
    } else {
      const auto& b = std::get<ImageProvenance>(rec).bbox;
      if (b.w <= 0 || b.h <= 0 || b.x < 0 || b.y < 0)
        d.push_back(error("INVALID_BBOX", key, "bounding box has non-positive extent"));
    }
  }
}

void validate_match_pairs(const InstantiatedGraph& g, Diagnostics& d) {
  std::map<std::string, const EventNode*> matched_by_ref;
  for (const auto& [id, ev] : g.events)
    if (ev.status == EventStatus::kMatched && ev.schema_ref)
      matched_by_ref.emplace(*ev.schema_ref, &ev);
  std::set<std::string> schema_side, instance_side;
  for (const auto& p : g.match_pairs) {
    if (!schema_side.insert(p.schema).second ||
        !instance_side.insert(p.instance).second)
      d.push_back(error("MATCH_PAIR_DUPLICATE", p.schema,
                        "match pairs are not injective at (" + p.schema + ", " +
                            p.instance + ")"));
    if (!matched_by_ref.count(p.schema))
      d.push_back(error("MATCH_PAIR", p.schema,
                        "pair names schema event without a matched node"));
  }
  for (const auto& [ref, ev] : matched_by_ref)
    if (!schema_side.count(ref))
      d.push_back(error("MATCH_PAIR_MISSING", ev->id, "matched event has no match pair"));
}

}  // namespace

Diagnostics validate_graph(const InstantiatedGraph& g) {
  Diagnostics d;
  const Hierarchy h(g);
  validate_events(g, d);
  validate_hierarchy(g, h, d);
  validate_temporal(g, d);
  validate_gates(g, d);
  validate_entities(g, d);
  validate_provenance(g, d);
  validate_match_pairs(g, d);
  sort_diagnostics(d);
  return d;
}

// ---------------------------------------------------------------------------
// Gates

GateVerdict evaluate_gate(GateKind kind, std::size_t members,
                          std::size_t occurred, bool terminal_source,
                          GateMode mode) {
  GateVerdict v = GateVerdict::kPending;
  switch (kind) {
    case GateKind::kXor:
      v = occurred == 1   ? GateVerdict::kSatisfied
          : occurred == 0 ? GateVerdict::kPending
                          : GateVerdict::kViolated;
      break;
    case GateKind::kOr:
      v = occurred >= 1 ? GateVerdict::kSatisfied : GateVerdict::kPending;
      break;
    case GateKind::kAnd:
      v = occurred == members ? GateVerdict::kSatisfied : GateVerdict::kPending;
      break;
  }
  if (mode == GateMode::kStrict && terminal_source && v == GateVerdict::kPending)
    v = GateVerdict::kViolated;
  return v;
}

Result<std::vector<GateStatus>> check_gates(const InstantiatedGraph& g,
                                            GateMode mode) {
  Diagnostics d;
  std::vector<GateStatus> out;
  for (const auto& gate : g.gates) {
    const EventNode* source = g.find_event(gate.source);
    if (!source)
      d.push_back(error("UNKNOWN_MEMBER", gate.id,
                        "gate source '" + gate.source + "' does not exist"));
    GateStatus st{gate.id, GateVerdict::kPending, {}};
    for (const auto& m : gate.members) {
      const EventNode* ev = g.find_event(m);
      if (!ev) {
        d.push_back(error("UNKNOWN_MEMBER", gate.id, "member '" + m + "' does not exist"));
        continue;
      }
      if (ev->occurred()) st.occurred.push_back(m);
    }
    st.verdict = evaluate_gate(gate.kind, gate.members.size(), st.occurred.size(),
                               source && source->terminal, mode);
    out.push_back(std::move(st));
  }
  if (!d.empty()) {
    sort_diagnostics(d);
    return d;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Entity ranking

std::vector<std::pair<std::string, std::size_t>> entity_occurrence_counts(
    const InstantiatedGraph& g) {
  std::map<std::string, std::size_t> counts;
  for (const auto& [id, _] : g.entities) counts[id] = 0;
  for (const auto& [_, ev] : g.events) {
    std::set<std::string> fillers;
    for (const auto& arg : ev.arguments) fillers.insert(arg.filler);
    for (const auto& f : fillers) {
      auto it = counts.find(f);
      if (it != counts.end()) ++it->second;
    }
  }
  std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  return out;
}

}  // namespace ege
