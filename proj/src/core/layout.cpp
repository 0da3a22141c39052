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

#include "core/layout.hpp"

#include <algorithm>
#include <map>

namespace ege::layout {

const char* to_string(Shape s) {
  switch (s) {
    case Shape::kCircle: return "circle";
    case Shape::kDiamond: return "diamond";
    case Shape::kGateAnd: return "gate-and";
    case Shape::kGateOr: return "gate-or";
    case Shape::kGateXor: return "gate-xor";
  }
  return "?";
}

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::kHierarchy: return "hierarchy";
    case EdgeKind::kTemporal: return "temporal";
    case EdgeKind::kGate: return "gate";
  }
  return "?";
}

const LayoutNode* Layout::find(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

namespace {

Shape gate_shape(GateKind k) {
  switch (k) {
    case GateKind::kAnd: return Shape::kGateAnd;
    case GateKind::kOr: return Shape::kGateOr;
    case GateKind::kXor: return Shape::kGateXor;
  }
  return Shape::kGateOr;
}

class Placer {
 public:
  Placer(const InstantiatedGraph& g, const ExpansionState& state,
         const std::optional<std::set<std::string>>& emphasis)
      : g_(g), state_(state), emphasis_(emphasis) {
    for (std::size_t i = 0; i < g.schema_order.size(); ++i) rank_.emplace(g.schema_order[i], i);
  }

  Result<Layout> run();

 private:
  bool expanded(const EventNode& n) const {
    return n.is_parent() && state_.expanded.count(n.id) > 0;
  }
  // Returns the x assigned to `id`.
  std::optional<double> place(const std::string& id, std::size_t depth);
  std::optional<std::vector<std::string>> order_group(const std::vector<std::string>& ids,
                                                      const std::string& parent);

  const InstantiatedGraph& g_;
  const ExpansionState& state_;
  const std::optional<std::set<std::string>>& emphasis_;
  std::map<std::string, std::size_t> rank_;
  std::map<std::string, std::size_t> index_;  // rendered id -> node position
  Layout layout_;
  std::size_t next_slot_ = 0;
  Diagnostics diags_;
};

std::optional<std::vector<std::string>> Placer::order_group(const std::vector<std::string>& ids,
                                                            const std::string& parent) {
  auto order = topological_order(ids, g_.temporal, rank_);
  if (!order)
    diags_.push_back(error("TEMPORAL_CYCLE", parent.empty() ? std::string("<top>") : parent,
                           "temporal relation among the rendered children is cyclic"));
  return order;
}

std::optional<double> Placer::place(const std::string& id, std::size_t depth) {
  const EventNode& node = g_.events.at(id);
  const std::size_t pos = layout_.nodes.size();
  index_.emplace(id, pos);
  LayoutNode ln;
  ln.id = id;
  ln.y = static_cast<double>(depth) * kRowHeight;
  ln.shape = node.is_parent() ? Shape::kDiamond : Shape::kCircle;
  ln.status = node.status;
  ln.dimmed = emphasis_.has_value() && !emphasis_->count(id);
  layout_.nodes.push_back(ln);

  if (expanded(node)) {
    std::vector<std::string> kids;
    for (const auto& c : node.children)
      if (g_.events.count(c) && c != id && !index_.count(c)) kids.push_back(c);
    auto order = order_group(kids, id);
    if (!order) return std::nullopt;
    double first = 0, last = 0;
    for (std::size_t i = 0; i < order->size(); ++i) {
      auto x = place((*order)[i], depth + 1);
      if (!x) return std::nullopt;
      if (i == 0) first = *x;
      last = *x;
      layout_.edges.push_back({id, (*order)[i], EdgeKind::kHierarchy});
    }
    if (!order->empty()) {
      layout_.nodes[pos].x = (first + last) / 2.0;
      return layout_.nodes[pos].x;
    }
  }
  layout_.nodes[pos].x = static_cast<double>(next_slot_++) * kSlotWidth;
  return layout_.nodes[pos].x;
}

Result<Layout> Placer::run() {
  const Hierarchy h(g_);
  std::vector<std::string> top;
  if (auto it = h.groups().find(""); it != h.groups().end()) top = it->second;
  auto order = order_group(top, "");
  if (!order) return diags_;
  for (const auto& id : *order)
    if (!place(id, 0)) return diags_;

  std::vector<LayoutEdge> temporal;
  for (const auto& e : g_.temporal)
    if (index_.count(e.before) && index_.count(e.after))
      layout_.edges.push_back({e.before, e.after, EdgeKind::kTemporal});

  for (const auto& gate : g_.gates) {
    auto src = index_.find(gate.source);
    if (src == index_.end()) continue;
    std::vector<const LayoutNode*> members;
    for (const auto& m : gate.members)
      if (auto it = index_.find(m); it != index_.end()) members.push_back(&layout_.nodes[it->second]);
    if (members.empty()) continue;
    const LayoutNode source = layout_.nodes[src->second];
    double min_x = members.front()->x, max_x = members.front()->x, sum_y = 0;
    bool any_emphasized = !source.dimmed;
    for (const auto* m : members) {
      min_x = std::min(min_x, m->x);
      max_x = std::max(max_x, m->x);
      sum_y += m->y;
      any_emphasized = any_emphasized || !m->dimmed;
    }
    LayoutNode glyph;
    glyph.id = gate.id;
    glyph.is_gate = true;
    glyph.shape = gate_shape(gate.kind);
    const double mid = (min_x + max_x) / 2.0;
    const double member_y = sum_y / static_cast<double>(members.size());
    glyph.x = gate.placement == GatePlacement::kChildren ? mid : (source.x + mid) / 2.0;
    glyph.y = (source.y + member_y) / 2.0;
    // Successors share the source's row; drop the glyph half a row so it
    // never sits on an event.
    if (glyph.y == source.y) glyph.y += kRowHeight / 2.0;
    glyph.dimmed = emphasis_.has_value() && !any_emphasized;
    std::vector<LayoutEdge> gate_edges{{gate.source, gate.id, EdgeKind::kGate}};
    for (const auto* m : members) gate_edges.push_back({gate.id, m->id, EdgeKind::kGate});
    layout_.nodes.push_back(std::move(glyph));
    layout_.edges.insert(layout_.edges.end(), gate_edges.begin(), gate_edges.end());
  }

  if (!layout_.nodes.empty()) {
    Bounds b{layout_.nodes.front().x, layout_.nodes.front().y, layout_.nodes.front().x,
             layout_.nodes.front().y};
    for (const auto& n : layout_.nodes) {
      b.min_x = std::min(b.min_x, n.x);
      b.min_y = std::min(b.min_y, n.y);
      b.max_x = std::max(b.max_x, n.x);
      b.max_y = std::max(b.max_y, n.y);
    }
    layout_.bounds = b;
  }
  return std::move(layout_);
}

}  // namespace

Result<Layout> compute_layout(const InstantiatedGraph& g, const ExpansionState& state,
                              const std::optional<std::set<std::string>>& emphasis) {
  return Placer(g, state, emphasis).run();
}

ExpansionState expand_all(const InstantiatedGraph& g) {
  ExpansionState st;
  for (const auto& [id, n] : g.events)
    if (n.is_parent()) st.expanded.insert(id);
  return st;
}

Result<ExpansionState> toggle_expansion(const InstantiatedGraph& g, const ExpansionState& state,
                                        const std::string& parent) {
  const EventNode* node = g.find_event(parent);
  if (!node || !node->is_parent())
    return error("NOT_A_PARENT", parent, "only parent events can be expanded");
  ExpansionState next = state;
  if (!next.expanded.count(parent)) {
    next.expanded.insert(parent);
    return next;
  }
  std::vector<std::string> stack{parent};
  std::set<std::string> seen;
  while (!stack.empty()) {
    const std::string id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    next.expanded.erase(id);
    if (const EventNode* n = g.find_event(id))
      for (const auto& c : n->children) stack.push_back(c);
  }
  return next;
}

Result<Layout> minimap_view(const Layout& l) {
  if (l.nodes.empty()) return error("EMPTY_LAYOUT", "", "minimap needs at least one node");
  const Bounds& b = l.bounds;
  const double extent = std::max(b.max_x - b.min_x, b.max_y - b.min_y);
  Layout out = l;
  if (extent <= 0.0) {
    for (auto& n : out.nodes) n.x = n.y = 0.5;
    out.bounds = {0.0, 0.0, 1.0, 1.0};
    return out;
  }
  const double scale = 1.0 / extent;
  for (auto& n : out.nodes) {
    n.x = (n.x - b.min_x) * scale;
    n.y = (n.y - b.min_y) * scale;
  }
  out.bounds = {0.0, 0.0, (b.max_x - b.min_x) * scale, (b.max_y - b.min_y) * scale};
  return out;
}

formats::Json to_json(const Layout& l) {
  using formats::Json;
  Json nodes = Json::array();
  for (const auto& n : l.nodes) {
    Json j = Json::object();
    j["id"] = n.id;
    j["kind"] = n.is_gate ? "gate" : "event";
    j["x"] = n.x;
    j["y"] = n.y;
    j["shape"] = to_string(n.shape);
    if (n.status) j["status"] = ege::to_string(*n.status);
    j["dimmed"] = n.dimmed;
    nodes.push_back(std::move(j));
  }
  Json edges = Json::array();
  for (const auto& e : l.edges) {
    Json j = Json::object();
    j["from"] = e.from;
    j["to"] = e.to;
    j["kind"] = to_string(e.kind);
    edges.push_back(std::move(j));
  }
  Json out = Json::object();
  out["nodes"] = std::move(nodes);
  out["edges"] = std::move(edges);
  out["bounds"] = Json::array({l.bounds.min_x, l.bounds.min_y, l.bounds.max_x, l.bounds.max_y});
  return out;
}

}  // namespace ege::layout
