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

#include "core/matcher.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace ege::matcher {

Diagnostics validate_config(const MatchConfig& cfg) {
  if (cfg.tau > 0.0 && cfg.tau <= 1.0) return {};
  return {error("BAD_TAU", "", "type_match_threshold must lie in (0, 1]")};
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::kMatchedByType: return "matched-by-type";
    case Decision::kMatchedByName: return "matched-by-name";
    case Decision::kPredicted: return "predicted";
    case Decision::kAttached: return "attached";
  }
  return "?";
}

std::set<std::string> name_tokens(std::string_view name) {
  std::set<std::string> tokens;
  std::string cur;
  for (char ch : name) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c >= 0x80) {
      cur += static_cast<char>(std::tolower(c));
    } else if (!cur.empty()) {
      tokens.insert(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.insert(std::move(cur));
  return tokens;
}

double dice(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& t : a) common += b.count(t);
  return 2.0 * static_cast<double>(common) / static_cast<double>(a.size() + b.size());
}

double score_match(const formats::SchemaEvent& s, const formats::InstanceEvent& e,
                   const MatchConfig&) {
  if (!s.wd_node.empty() && s.wd_node == e.type.qnode) return 1.0;
  return dice(name_tokens(s.name), name_tokens(e.name));
}

std::string gate_id_for(const std::string& source) { return "gate:" + source; }

std::string trigger_provenance_id(const std::string& event_id) {
  return event_id + "#trigger";
}

namespace {

struct Candidate {
  std::size_t schema_index;
  std::size_t instance_index;
  double score;
};

struct Accepted {
  std::string schema;
  std::string instance;
  double score;
};

class Matcher {
 public:
  Matcher(const formats::SchemaFile& schema, const formats::InstanceFile& instance,
          const MatchConfig& cfg)
      : schema_(schema), instance_(instance), cfg_(cfg) {
    for (std::size_t i = 0; i < schema.events.size(); ++i) {
      const auto& s = schema.events[i];
      schema_index_.emplace(s.id, i);
      for (const auto& c : s.children) schema_parent_.emplace(c, s.id);
      for (const auto& t : s.outlinks) schema_edges_.insert({s.id, t});
    }
    for (const auto& t : instance.temporal) instance_edges_.insert(t);
  }

  Result<MatchResult> run();

 private:
  std::vector<std::vector<std::size_t>> levels() const;
  bool contradicts(const std::string& s, const std::string& e) const;
  const std::string& schema_parent(const std::string& id) const;
  std::vector<std::string> instance_provenance(const formats::InstanceEvent& e) const;

  const formats::SchemaFile& schema_;
  const formats::InstanceFile& instance_;
  const MatchConfig& cfg_;
  std::map<std::string, std::size_t> schema_index_;
  std::map<std::string, std::string> schema_parent_;
  std::set<TemporalEdge> schema_edges_;
  std::set<TemporalEdge> instance_edges_;
  std::vector<Accepted> accepted_;
  std::set<std::string> provenance_ids_;
};

const std::string& Matcher::schema_parent(const std::string& id) const {
  static const std::string kTop;
  auto it = schema_parent_.find(id);
  return it == schema_parent_.end() ? kTop : it->second;
}

// Schema events grouped by hierarchy depth, breadth-first from the roots.
std::vector<std::vector<std::size_t>> Matcher::levels() const {
  std::vector<std::vector<std::size_t>> out;
  std::set<std::string> seen;
  std::vector<std::string> frontier;
  for (const auto& r : schema_.roots)
    if (schema_index_.count(r) && seen.insert(r).second) frontier.push_back(r);
  while (!frontier.empty()) {
    std::vector<std::size_t> level;
    std::vector<std::string> next;
    for (const auto& id : frontier) {
      level.push_back(schema_index_.at(id));
      for (const auto& c : schema_.events[schema_index_.at(id)].children)
        if (schema_index_.count(c) && seen.insert(c).second) next.push_back(c);
    }
    out.push_back(std::move(level));
    frontier = std::move(next);
  }
  return out;
}

// A pair (s, e) is blocked by an accepted sibling pair (s2, e2) when the
// schema orders s before s2 while the instance orders e2 before e, or the
// reverse.
bool Matcher::contradicts(const std::string& s, const std::string& e) const {
  for (const auto& a : accepted_) {
    if (schema_parent(a.schema) != schema_parent(s)) continue;
    if (schema_edges_.count({s, a.schema}) && instance_edges_.count({a.instance, e}))
      return true;
    if (schema_edges_.count({a.schema, s}) && instance_edges_.count({e, a.instance}))
      return true;
  }
  return false;
}

std::vector<std::string> Matcher::instance_provenance(const formats::InstanceEvent& e) const {
  if (!e.provenance.empty() || !e.trigger) return e.provenance;
  const std::string id = trigger_provenance_id(e.id);
  if (provenance_ids_.count(id)) return {};
  return {id};
}

Result<MatchResult> Matcher::run() {
  if (auto d = validate_config(cfg_); !d.empty()) return d;
  if (schema_.roots.empty())
    return error("EMPTY_SCHEMA", schema_.id, "schema has no root events");

  for (const auto& p : instance_.provenance) provenance_ids_.insert(provenance_id(p.record));

  // Greedy acceptance, one hierarchy level at a time.
  std::vector<bool> assigned(instance_.events.size(), false);
  std::set<std::string> matched_schema;
  for (const auto& level : levels()) {
    std::vector<Candidate> cands;
    for (std::size_t si : level) {
      for (std::size_t ei = 0; ei < instance_.events.size(); ++ei) {
        const auto& e = instance_.events[ei];
        if (assigned[ei] || instance_provenance(e).empty()) continue;
        const double score = score_match(schema_.events[si], e, cfg_);
        if (score >= cfg_.tau) cands.push_back({si, ei, score});
      }
    }
    std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
      return std::make_tuple(-a.score, a.schema_index, instance_.events[a.instance_index].id) <
             std::make_tuple(-b.score, b.schema_index, instance_.events[b.instance_index].id);
    });
    for (const auto& c : cands) {
      const auto& s = schema_.events[c.schema_index];
      const auto& e = instance_.events[c.instance_index];
      if (assigned[c.instance_index] || matched_schema.count(s.id)) continue;
      if (contradicts(s.id, e.id)) continue;
      assigned[c.instance_index] = true;
      matched_schema.insert(s.id);
      accepted_.push_back({s.id, e.id, c.score});
    }
  }

  MatchResult result;
  InstantiatedGraph& g = result.graph;
  std::map<std::string, const Accepted*> by_schema;
  for (const auto& a : accepted_) by_schema.emplace(a.schema, &a);
  std::map<std::string, const formats::InstanceEvent*> instance_by_id;
  for (const auto& e : instance_.events) instance_by_id.emplace(e.id, &e);

  for (const auto& s : schema_.events) {
    EventNode n;
    n.id = s.id;
    n.name = s.name;
    n.description = s.description;
    n.event_type = {s.wd_node, s.wd_name};
    n.children = s.children;
    n.schema_ref = s.id;
    if (auto it = by_schema.find(s.id); it != by_schema.end()) {
      const auto& e = *instance_by_id.at(it->second->instance);
      n.status = EventStatus::kMatched;
      n.confidence = it->second->score;
      if (!e.description.empty()) n.description = e.description;
      n.arguments = e.arguments;
      n.provenance = instance_provenance(e);
      result.decisions[s.id] = (!s.wd_node.empty() && s.wd_node == e.type.qnode)
                                   ? Decision::kMatchedByType
                                   : Decision::kMatchedByName;
      g.match_pairs.push_back({s.id, e.id});
    } else {
      n.status = EventStatus::kPredicted;
      result.decisions[s.id] = Decision::kPredicted;
    }
    g.events.emplace(s.id, std::move(n));
    g.schema_order.push_back(s.id);
  }
  g.roots = schema_.roots;

  // Unassigned instance events hang below the matched node sharing the most
  // argument entities; no unique best means the scenario root.
  std::vector<const formats::InstanceEvent*> unassigned;
  for (std::size_t ei = 0; ei < instance_.events.size(); ++ei)
    if (!assigned[ei]) unassigned.push_back(&instance_.events[ei]);
  std::sort(unassigned.begin(), unassigned.end(),
            [](const auto* a, const auto* b) { return a->id < b->id; });
  Diagnostics collisions;
  for (const auto* e : unassigned)
    if (g.events.count(e->id))
      collisions.push_back(error("ID_COLLISION", e->id,
                                 "unmatched instance event shares an id with a schema event"));
  if (!collisions.empty()) return collisions;

  for (const auto* e : unassigned) {
    std::set<std::string> fillers;
    for (const auto& a : e->arguments) fillers.insert(a.filler);
    std::string best;
    std::size_t best_shared = 0;
    bool tie = false;
    for (const auto& acc : accepted_) {
      const auto& node = g.events.at(acc.schema);
      std::set<std::string> node_fillers;
      for (const auto& a : node.arguments) node_fillers.insert(a.filler);
      std::size_t shared = 0;
      for (const auto& f : fillers) shared += node_fillers.count(f);
      if (shared > best_shared) {
        best_shared = shared;
        best = acc.schema;
        tie = false;
      } else if (shared == best_shared && shared > 0) {
        tie = true;
      }
    }
    const std::string parent = (best_shared == 0 || tie) ? schema_.roots.front() : best;

    EventNode n;
    n.id = e->id;
    n.name = e->name;
    n.description = e->description;
    n.event_type = e->type;
    n.status = EventStatus::kSourceOnly;
    n.confidence = e->confidence.value_or(1.0);
    n.arguments = e->arguments;
    n.provenance = instance_provenance(*e);
    g.events.at(parent).children.push_back(e->id);
    g.events.emplace(e->id, std::move(n));
    result.decisions[e->id] = Decision::kAttached;
  }

  // Laplace-smoothed confidence for predictions: (occurred siblings + 1) /
  // (siblings + 2), with the roots forming the top-level sibling group.
  auto group_confidence = [&](const std::vector<std::string>& group) {
    std::size_t occurred = 0;
    for (const auto& id : group) occurred += g.events.at(id).occurred() ? 1 : 0;
    return (static_cast<double>(occurred) + 1.0) / (static_cast<double>(group.size()) + 2.0);
  };
  std::vector<std::pair<std::string, double>> predicted_conf;
  for (const auto& r : g.roots)
    if (g.events.at(r).status == EventStatus::kPredicted)
      predicted_conf.emplace_back(r, group_confidence(g.roots));
  for (const auto& [id, node] : g.events)
    for (const auto& c : node.children)
      if (g.events.at(c).status == EventStatus::kPredicted)
        predicted_conf.emplace_back(c, group_confidence(node.children));
  for (const auto& [id, conf] : predicted_conf) g.events.at(id).confidence = conf;

  for (const auto& s : schema_.events)
    for (const auto& t : s.outlinks) g.temporal.push_back({s.id, t});

  // Instance edges, renamed onto output ids. An edge that would close a cycle
  // inside a sibling group is dropped with a warning.
  std::map<std::string, std::string> node_of;
  for (const auto& a : accepted_) node_of[a.instance] = a.schema;
  for (const auto* e : unassigned) node_of[e->id] = e->id;
  std::set<TemporalEdge> present(g.temporal.begin(), g.temporal.end());
  const std::size_t baseline_cycles = detect_temporal_cycles(g).size();
  for (const auto& t : instance_.temporal) {
    auto b = node_of.find(t.before), a = node_of.find(t.after);
    if (b == node_of.end() || a == node_of.end()) continue;
    TemporalEdge mapped{b->second, a->second};
    if (mapped.before == mapped.after || present.count(mapped)) continue;
    g.temporal.push_back(mapped);
    if (detect_temporal_cycles(g).size() > baseline_cycles) {
      g.temporal.pop_back();
      result.diagnostics.push_back(
          warning("TEMPORAL_DROPPED", t.before,
                  "instance edge " + t.before + "->" + t.after +
                      " contradicts the instantiated order and was dropped"));
      continue;
    }
    present.insert(mapped);
  }

  for (const auto& s : schema_.events) {
    if (!s.gate) continue;
    g.gates.push_back({gate_id_for(s.id), s.id, s.gate->kind, s.gate->members,
                       s.gate->placement});
  }

  for (const auto& e : instance_.entities)
    g.entities.emplace(e.id, EntityNode{e.id, e.name, e.wd_qnode, e.provenance});
  for (const auto& p : instance_.provenance) g.provenance.emplace(provenance_id(p.record), p.record);
  for (const auto& e : instance_.events) {
    if (!e.provenance.empty() || !e.trigger) continue;
    const std::string id = trigger_provenance_id(e.id);
    if (provenance_ids_.count(id)) continue;
    g.provenance.emplace(id, TextProvenance{id, e.trigger->doc_id, e.trigger->start,
                                            e.trigger->end, e.trigger->text});
  }

  sort_diagnostics(result.diagnostics);
  Diagnostics warnings = result.diagnostics;
  return {std::move(result), std::move(warnings)};
}

}  // namespace

Result<MatchResult> match_graphs(const formats::SchemaFile& schema,
                                 const formats::InstanceFile& instance,
                                 const MatchConfig& cfg) {
  return Matcher(schema, instance, cfg).run();
}

}  // namespace ege::matcher
