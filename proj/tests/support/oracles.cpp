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

#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>

namespace ege::testing {

GateVerdict truth_table_verdict(GateKind kind, const std::vector<bool>& occurred,
                                bool terminal_source, GateMode mode) {
  std::size_t count = 0;
  for (bool b : occurred) count += b ? 1 : 0;
  const bool all = count == occurred.size();
  const bool closed = mode == GateMode::kStrict && terminal_source;
  if (kind == GateKind::kOr) {
    // one or more may occur; nothing occurring yet is only pending
    if (count >= 1) return GateVerdict::kSatisfied;
    return closed ? GateVerdict::kViolated : GateVerdict::kPending;
  }
  if (kind == GateKind::kAnd) {
    if (all) return GateVerdict::kSatisfied;
    return closed ? GateVerdict::kViolated : GateVerdict::kPending;
  }
  // XOR: exactly one
  if (count > 1) return GateVerdict::kViolated;
  if (count == 1) return GateVerdict::kSatisfied;
  return closed ? GateVerdict::kViolated : GateVerdict::kPending;
}

std::map<std::string, std::string> parent_map(const InstantiatedGraph& g) {
  std::map<std::string, std::string> parent;
  for (const auto& [id, _] : g.events) parent[id] = "";
  for (const auto& [id, ev] : g.events)
    for (const auto& c : ev.children)
      if (parent.count(c) && parent[c].empty()) parent[c] = id;
  return parent;
}

namespace {

using Adjacency = std::map<std::string, std::vector<std::string>>;

Adjacency sibling_adjacency(const InstantiatedGraph& g) {
  const auto parent = parent_map(g);
  Adjacency adj;
  for (const auto& e : g.temporal) {
    auto a = parent.find(e.before), b = parent.find(e.after);
    if (a == parent.end() || b == parent.end() || a->second != b->second) continue;
    adj[e.before].push_back(e.after);
  }
  for (auto& [_, v] : adj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return adj;
}

}  // namespace

std::vector<std::vector<std::string>> brute_force_cycles(const InstantiatedGraph& g) {
  const Adjacency adj = sibling_adjacency(g);
  std::set<std::vector<std::string>> found;
  for (const auto& [start, _] : g.events) {
    // Only cycles whose smallest vertex is `start`.
    std::vector<std::string> path{start};
    std::set<std::string> on_path{start};
    std::function<void(const std::string&)> dfs = [&](const std::string& v) {
      auto it = adj.find(v);
      if (it == adj.end()) return;
      for (const auto& w : it->second) {
        if (w == start) {
          found.insert(path);
        } else if (w > start && !on_path.count(w)) {
          path.push_back(w);
          on_path.insert(w);
          dfs(w);
          on_path.erase(w);
          path.pop_back();
        }
      }
    };
    dfs(start);
  }
  return {found.begin(), found.end()};
}

bool sibling_groups_acyclic(const InstantiatedGraph& g) {
  Adjacency adj = sibling_adjacency(g);
  std::map<std::string, std::size_t> indeg;
  for (const auto& [id, _] : g.events) indeg[id] = 0;
  for (const auto& [_, outs] : adj)
    for (const auto& w : outs) ++indeg[w];
  std::size_t removed = 0;
  bool progress = true;
  std::set<std::string> gone;
  while (progress) {
    progress = false;
    for (auto& [id, d] : indeg) {
      if (d != 0 || gone.count(id)) continue;
      gone.insert(id);
      ++removed;
      progress = true;
      for (const auto& w : adj[id]) --indeg[w];
    }
  }
  return removed == g.events.size();
}

namespace {

std::set<std::string> tokens(const std::string& s) {
  std::set<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.insert(cur);
    cur.clear();
  };
  for (unsigned char c : s) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c >= 0x80)
      cur.push_back(static_cast<char>(c));
    else if (c >= 'A' && c <= 'Z')
      cur.push_back(static_cast<char>(c - 'A' + 'a'));
    else
      flush();
  }
  flush();
  return out;
}

}  // namespace

double oracle_score(const formats::SchemaEvent& s, const formats::InstanceEvent& e) {
  if (!s.wd_node.empty() && s.wd_node == e.type.qnode) return 1.0;
  const auto a = tokens(s.name), b = tokens(e.name);
  if (a.empty() && b.empty()) return 0.0;
  std::size_t both = 0;
  for (const auto& t : a)
    if (b.count(t)) ++both;
  return 2.0 * static_cast<double>(both) / static_cast<double>(a.size() + b.size());
}

namespace {

struct Pair {
  std::size_t s;  // schema index
  std::size_t e;  // instance index
  double score;
};

struct Levels {
  std::vector<std::vector<std::size_t>> levels;
  std::map<std::string, std::string> parent;
};

Levels schema_levels(const formats::SchemaFile& schema) {
  Levels out;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < schema.events.size(); ++i) index[schema.events[i].id] = i;
  for (const auto& s : schema.events)
    for (const auto& c : s.children) out.parent.emplace(c, s.id);
  std::set<std::string> seen;
  std::vector<std::string> frontier;
  for (const auto& r : schema.roots)
    if (index.count(r) && seen.insert(r).second) frontier.push_back(r);
  while (!frontier.empty()) {
    std::vector<std::size_t> level;
    std::vector<std::string> next;
    for (const auto& id : frontier) {
      level.push_back(index[id]);
      for (const auto& c : schema.events[index[id]].children)
        if (index.count(c) && seen.insert(c).second) next.push_back(c);
    }
    out.levels.push_back(level);
    frontier = next;
  }
  return out;
}

bool eligible(const formats::InstanceEvent& e) { return !e.provenance.empty() || e.trigger; }

std::vector<Pair> level_candidates(const formats::SchemaFile& schema,
                                   const formats::InstanceFile& instance,
                                   const std::vector<std::size_t>& level,
                                   const std::vector<bool>& assigned, double tau) {
  std::vector<Pair> out;
  for (std::size_t s : level)
    for (std::size_t e = 0; e < instance.events.size(); ++e) {
      if (assigned[e] || !eligible(instance.events[e])) continue;
      const double sc = oracle_score(schema.events[s], instance.events[e]);
      if (sc >= tau) out.push_back({s, e, sc});
    }
  std::sort(out.begin(), out.end(), [&](const Pair& a, const Pair& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.s != b.s) return a.s < b.s;
    return instance.events[a.e].id < instance.events[b.e].id;
  });
  return out;
}

}  // namespace

std::size_t max_level_candidates(const formats::SchemaFile& schema,
                                 const formats::InstanceFile& instance, double tau) {
  const Levels lv = schema_levels(schema);
  std::vector<bool> none(instance.events.size(), false);
  std::size_t most = 0;
  for (const auto& level : lv.levels)
    most = std::max(most, level_candidates(schema, instance, level, none, tau).size());
  return most;
}

std::set<std::pair<std::string, std::string>> exhaustive_match(
    const formats::SchemaFile& schema, const formats::InstanceFile& instance, double tau) {
  const Levels lv = schema_levels(schema);
  std::set<std::pair<std::string, std::string>> schema_edges, instance_edges;
  for (const auto& s : schema.events)
    for (const auto& t : s.outlinks) schema_edges.insert({s.id, t});
  for (const auto& t : instance.temporal) instance_edges.insert({t.before, t.after});
  auto parent_of = [&](const std::string& id) {
    auto it = lv.parent.find(id);
    return it == lv.parent.end() ? std::string() : it->second;
  };

  std::vector<bool> assigned(instance.events.size(), false);
  std::set<std::pair<std::string, std::string>> result;
  for (const auto& level : lv.levels) {
    const auto cands = level_candidates(schema, instance, level, assigned, tau);
    const std::size_t n = cands.size();
    auto conflict = [&](const Pair& a, const Pair& b) {
      if (a.s == b.s || a.e == b.e) return true;
      const auto& sa = schema.events[a.s].id;
      const auto& sb = schema.events[b.s].id;
      const auto& ea = instance.events[a.e].id;
      const auto& eb = instance.events[b.e].id;
      if (parent_of(sa) != parent_of(sb)) return false;
      return (schema_edges.count({sa, sb}) && instance_edges.count({eb, ea})) ||
             (schema_edges.count({sb, sa}) && instance_edges.count({ea, eb}));
    };
    // Every conflict-free subset; keep the lexicographically greatest
    // membership vector in candidate order.
    std::vector<bool> best(n, false), cur(n, false);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (i == n) {
        if (cur > best) best = cur;
        return;
      }
      cur[i] = false;
      walk(i + 1);
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (cur[j] && conflict(cands[i], cands[j])) ok = false;
      if (ok) {
        cur[i] = true;
        walk(i + 1);
        cur[i] = false;
      }
    };
    walk(0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!best[i]) continue;
      assigned[cands[i].e] = true;
      result.insert({schema.events[cands[i].s].id, instance.events[cands[i].e].id});
    }
  }
  return result;
}

std::set<std::string> scan_by_entity(const InstantiatedGraph& g, const std::string& entity) {
  std::set<std::string> out;
  for (const auto& [id, ev] : g.events)
    for (const auto& a : ev.arguments)
      if (a.filler == entity) out.insert(id);
  return out;
}

std::set<std::string> scan_by_confidence(const InstantiatedGraph& g, double lo, double hi) {
  std::set<std::string> out;
  for (const auto& [id, ev] : g.events)
    if (!(ev.confidence < lo) && !(ev.confidence > hi)) out.insert(id);
  return out;
}

std::vector<std::pair<std::string, std::size_t>> scan_occurrence_counts(
    const InstantiatedGraph& g) {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const auto& [eid, _] : g.entities) {
    std::size_t n = 0;
    for (const auto& [id, ev] : g.events) {
      bool uses = false;
      for (const auto& a : ev.arguments) uses = uses || a.filler == eid;
      n += uses ? 1 : 0;
    }
    out.emplace_back(eid, n);
  }
  // insertion sort by (count desc, id asc)
  for (std::size_t i = 1; i < out.size(); ++i)
    for (std::size_t j = i; j > 0; --j) {
      const auto& a = out[j - 1];
      const auto& b = out[j];
      const bool swap = a.second < b.second || (a.second == b.second && a.first > b.first);
      if (!swap) break;
      std::swap(out[j - 1], out[j]);
    }
  return out;
}

std::u32string decode_utf8(const std::string& s) {
  std::u32string out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : 4;
    char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
    for (std::size_t k = 1; k < len && i + k < s.size(); ++k)
      cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(const std::u32string& s) {
  std::string out;
  for (char32_t c : s) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> split_paragraphs(const std::u32string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 0, i = 0;
  while (i < text.size()) {
    if (text[i] == U'\n' && i + 1 < text.size() && text[i + 1] == U'\n') {
      std::size_t j = i;
      while (j < text.size() && text[j] == U'\n') ++j;
      if (i > start) out.emplace_back(start, i);
      start = j;
      i = j;
    } else {
      ++i;
    }
  }
  if (text.size() > start || out.empty()) out.emplace_back(start, text.size());
  return out;
}

std::set<std::string> expected_rendered(const InstantiatedGraph& g,
                                        const std::set<std::string>& expanded) {
  std::set<std::string> out;
  std::vector<std::string> stack(g.roots.begin(), g.roots.end());
  while (!stack.empty()) {
    const std::string id = stack.back();
    stack.pop_back();
    if (!out.insert(id).second) continue;
    const auto* ev = g.find_event(id);
    if (ev && expanded.count(id))
      for (const auto& c : ev->children) stack.push_back(c);
  }
  return out;
}

std::vector<std::string> layout_violations(const InstantiatedGraph& g,
                                           const std::set<std::string>& expanded,
                                           const layout::Layout& l) {
  std::vector<std::string> v;
  std::map<std::string, const layout::LayoutNode*> nodes;
  std::set<std::string> events;
  for (const auto& n : l.nodes) {
    if (!nodes.emplace(n.id, &n).second) v.push_back("duplicate node " + n.id);
    if (!n.is_gate) events.insert(n.id);
  }
  const auto want = expected_rendered(g, expanded);
  if (events != want) v.push_back("rendered set differs from expansion state");

  const auto parent = parent_map(g);
  for (const auto& id : events) {
    const auto* n = nodes[id];
    const auto* ev = g.find_event(id);
    if (!ev) {
      v.push_back("unknown event rendered " + id);
      continue;
    }
    const bool diamond = n->shape == layout::Shape::kDiamond;
    if (diamond != !ev->children.empty()) v.push_back("shape rule broken at " + id);
    const std::string& p = parent.at(id);
    if (p.empty()) {
      if (n->y != 0.0) v.push_back("top-level event not on row 0: " + id);
    } else if (nodes.count(p) && nodes[p]->y + layout::kRowHeight != n->y) {
      v.push_back("child " + id + " not one row below " + p);
    }
  }
  for (const auto& e : l.edges) {
    if (!nodes.count(e.from) || !nodes.count(e.to)) {
      v.push_back("edge endpoint not rendered " + e.from + "->" + e.to);
      continue;
    }
    if (e.kind == layout::EdgeKind::kHierarchy &&
        !(nodes[e.from]->y + layout::kRowHeight == nodes[e.to]->y))
      v.push_back("hierarchy edge not downward " + e.from + "->" + e.to);
  }
  for (const auto& t : g.temporal) {
    if (!events.count(t.before) || !events.count(t.after)) continue;
    if (parent.at(t.before) != parent.at(t.after)) continue;
    if (!(nodes[t.before]->x < nodes[t.after]->x))
      v.push_back("temporal order broken " + t.before + "->" + t.after);
  }
  std::set<std::pair<double, double>> spots;
  for (const auto& id : events)
    if (!spots.insert({nodes[id]->x, nodes[id]->y}).second)
      v.push_back("coordinate collision at " + id);
  return v;
}

}  // namespace ege::testing
