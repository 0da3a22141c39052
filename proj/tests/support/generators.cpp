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

#include "support/generators.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "core/matcher.hpp"
#include "support/oracles.hpp"

namespace ege::testing {

namespace {

const std::vector<std::string> kWords = {
    "illness", "outbreak", "death",  "funeral", "symptoms", "outcomes", "report",
    "arrest",  "attack",   "trial",  "water",   "advisory", "café",     "Zürich",
    "vote",    "analysis", "data",   "cases",   "confirmed"};
const std::vector<std::string> kRoles = {"agent", "place", "patient", "topic", "victim"};

std::string words(Rng& rng, std::size_t lo, std::size_t hi) {
  std::string out;
  const std::size_t n = rng.between(lo, hi);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += rng.pick(kWords);
  }
  return out;
}

std::string qnode(std::size_t n) { return "Q" + std::to_string(100 + n); }

TextProvenance random_span(Rng& rng, const formats::CorpusFile& corpus, const std::string& id) {
  const auto& doc = rng.pick(corpus.documents);
  const auto text = decode_utf8(doc.text);
  const std::size_t start = rng.below(text.size() - 1);
  const std::size_t end = rng.between(start + 1, std::min(text.size(), start + 24));
  return {id, doc.doc_id, static_cast<std::int64_t>(start), static_cast<std::int64_t>(end),
          encode_utf8(text.substr(start, end - start))};
}

BoundingBox random_box(Rng& rng, const formats::ImageRecord& im) {
  BoundingBox b;
  b.w = static_cast<std::int64_t>(rng.between(1, static_cast<std::size_t>(im.width)));
  b.h = static_cast<std::int64_t>(rng.between(1, static_cast<std::size_t>(im.height)));
  b.x = static_cast<std::int64_t>(rng.below(static_cast<std::size_t>(im.width - b.w) + 1));
  b.y = static_cast<std::int64_t>(rng.below(static_cast<std::size_t>(im.height - b.h) + 1));
  return b;
}

std::vector<const formats::ImageRecord*> all_images(const formats::CorpusFile& corpus) {
  std::vector<const formats::ImageRecord*> out;
  for (const auto& d : corpus.documents)
    for (const auto& im : d.images) out.push_back(&im);
  return out;
}

}  // namespace

formats::CorpusFile random_corpus(Rng& rng) {
  formats::CorpusFile c;
  const std::size_t docs = rng.between(1, 3);
  for (std::size_t d = 0; d < docs; ++d) {
    formats::Document doc;
    doc.doc_id = "doc-" + std::to_string(d);
    doc.title = words(rng, 1, 4);
    const std::size_t paras = rng.between(1, 4);
    for (std::size_t p = 0; p < paras; ++p) {
      if (p) doc.text += rng.chance(0.3) ? "\n\n\n" : "\n\n";
      doc.text += words(rng, 3, 12);
      if (rng.chance(0.3)) doc.text += "\n" + words(rng, 2, 6);
    }
    const std::size_t images = rng.between(0, 3);
    for (std::size_t i = 0; i < images; ++i)
      doc.images.push_back({doc.doc_id + "-img-" + std::to_string(i), "media/" + doc.doc_id,
                            static_cast<std::int64_t>(rng.between(16, 800)),
                            static_cast<std::int64_t>(rng.between(16, 600)),
                            formats::Json::object()});
    c.documents.push_back(std::move(doc));
  }
  return c;
}

formats::SchemaFile random_schema(Rng& rng, const SchemaShape& shape) {
  formats::SchemaFile s;
  s.id = "random";
  s.name = "Random Schema";
  const std::size_t n = rng.between(shape.min_events, shape.max_events);
  const std::size_t roots = std::min(n, rng.between(1, shape.max_roots));
  for (std::size_t i = 0; i < n; ++i) {
    formats::SchemaEvent e;
    e.id = "s" + std::to_string(i);
    e.name = words(rng, 1, 3);
    e.wd_node = qnode(rng.below(n + 4));
    e.wd_name = e.name;
    if (rng.chance(0.3))
      e.arg_roles.push_back({rng.pick(kRoles), {"person"}, formats::Json::object()});
    s.events.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < roots; ++i) s.roots.push_back(s.events[i].id);
  for (std::size_t i = roots; i < n; ++i) s.events[rng.below(i)].children.push_back(s.events[i].id);

  // Temporal links inside each sibling group follow a random order, so the
  // group stays acyclic.
  std::vector<std::vector<std::size_t>> groups;
  {
    std::vector<std::size_t> top;
    for (std::size_t i = 0; i < roots; ++i) top.push_back(i);
    groups.push_back(top);
    for (const auto& e : s.events) {
      std::vector<std::size_t> g;
      for (const auto& c : e.children) g.push_back(std::stoul(c.substr(1)));
      if (!g.empty()) groups.push_back(g);
    }
  }
  for (auto g : groups) {
    rng.shuffle(g);
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = a + 1; b < g.size(); ++b)
        if (rng.chance(shape.edge_chance))
          s.events[g[a]].outlinks.push_back(s.events[g[b]].id);
  }
  for (auto& e : s.events) {
    if (!rng.chance(shape.gate_chance)) continue;
    const bool successors = !e.outlinks.empty() && (e.children.empty() || rng.chance(0.5));
    const auto& pool = successors ? e.outlinks : e.children;
    if (pool.empty()) continue;
    formats::SchemaGate gate;
    gate.kind = rng.pick(std::vector<GateKind>{GateKind::kAnd, GateKind::kOr, GateKind::kXor});
    gate.placement = successors ? GatePlacement::kSuccessors : GatePlacement::kChildren;
    for (const auto& m : pool)
      if (rng.chance(0.7)) gate.members.push_back(m);
    if (gate.members.empty()) gate.members.push_back(pool.front());
    e.gate = gate;
  }
  return s;
}

formats::InstanceFile random_instance(Rng& rng, const formats::SchemaFile& schema,
                                      const formats::CorpusFile& corpus,
                                      const InstanceShape& shape) {
  formats::InstanceFile inst;
  const auto images = all_images(corpus);
  std::size_t next_prov = 0;
  auto add_text = [&]() {
    const std::string id = "p" + std::to_string(next_prov++);
    inst.provenance.push_back({random_span(rng, corpus, id), formats::Json::object()});
    return id;
  };
  auto add_image = [&]() {
    const std::string id = "p" + std::to_string(next_prov++);
    const auto* im = images[rng.below(images.size())];
    inst.provenance.push_back({ImageProvenance{id, im->image_id, random_box(rng, *im)},
                               formats::Json::object()});
    return id;
  };

  const std::size_t entities = rng.between(0, shape.max_entities);
  for (std::size_t i = 0; i < entities; ++i) {
    formats::InstanceEntity e;
    e.id = "ent" + std::to_string(i);
    e.name = words(rng, 1, 2);
    if (rng.chance(0.4)) e.wd_qnode = "Q" + std::to_string(5000 + i);
    if (rng.chance(0.7)) e.provenance.push_back(add_text());
    if (!images.empty() && rng.chance(0.3)) e.provenance.push_back(add_image());
    inst.entities.push_back(std::move(e));
  }

  const std::size_t n = rng.between(0, shape.max_events);
  for (std::size_t i = 0; i < n; ++i) {
    formats::InstanceEvent e;
    e.id = "i" + std::to_string(i);
    if (!schema.events.empty() && rng.chance(shape.typed_chance)) {
      const auto& s = rng.pick(schema.events);
      e.type = {s.wd_node, s.wd_name};
    } else {
      e.type = {"Q" + std::to_string(9000 + rng.below(50)), "other"};
    }
    e.name = words(rng, 1, 3);
    e.description = words(rng, 0, 6);
    if (rng.chance(shape.trigger_chance)) {
      const auto span = random_span(rng, corpus, "");
      e.trigger = formats::Trigger{span.text, span.doc_id, span.start, span.end};
    } else if (rng.chance(0.5)) {
      e.provenance.push_back(add_text());
    }
    if (entities > 0) {
      std::set<std::pair<std::string, std::string>> used;
      const std::size_t args = rng.between(0, 3);
      for (std::size_t a = 0; a < args; ++a) {
        std::string role = rng.pick(kRoles);
        std::string filler = "ent" + std::to_string(rng.below(entities));
        if (!used.insert({role, filler}).second) continue;
        e.arguments.push_back({role, filler, static_cast<std::int64_t>(e.arguments.size())});
      }
    }
    if (rng.chance(0.7)) e.confidence = static_cast<double>(rng.below(101)) / 100.0;
    inst.events.push_back(std::move(e));
  }

  std::set<TemporalEdge> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && rng.chance(shape.edge_chance))
        edges.insert({inst.events[a].id, inst.events[b].id});
  inst.temporal.assign(edges.begin(), edges.end());
  rng.shuffle(inst.temporal);
  return inst;
}

RandomGraph random_graph(Rng& rng, std::size_t max_events) {
  for (;;) {
    RandomGraph out;
    out.corpus = random_corpus(rng);
    SchemaShape ss;
    ss.max_events = std::max<std::size_t>(2, std::min<std::size_t>(18, max_events - 1));
    out.schema = random_schema(rng, ss);
    InstanceShape is;
    is.max_events = std::min<std::size_t>(12, max_events - out.schema.events.size());
    out.instance = random_instance(rng, out.schema, out.corpus, is);
    const double tau = 0.3 + 0.1 * static_cast<double>(rng.below(7));
    auto m = matcher::match_graphs(out.schema, out.instance, {tau});
    if (!m || m->graph.events.size() > max_events) continue;
    out.graph = std::move(m->graph);
    return out;
  }
}

namespace {

std::vector<std::string> event_ids(const InstantiatedGraph& g) {
  std::vector<std::string> out;
  for (const auto& [id, _] : g.events) out.push_back(id);
  return out;
}

std::vector<std::string> entity_ids(const InstantiatedGraph& g) {
  std::vector<std::string> out;
  for (const auto& [id, _] : g.entities) out.push_back(id);
  return out;
}

}  // namespace

editor::EditOp random_op(Rng& rng, const InstantiatedGraph& g,
                         const provenance::CorpusIndex& corpus) {
  using namespace editor;
  const auto events = event_ids(g);
  const auto entities = entity_ids(g);
  const auto parent = parent_map(g);
  if (events.empty()) return invalid_op(rng, g);

  for (;;) {
    switch (rng.below(14)) {
      case 0: {
        UpdateEventFields op{rng.pick(events), {}, {}, {}};
        if (rng.chance(0.6)) op.name = words(rng, 1, 3);
        if (rng.chance(0.4)) op.description = words(rng, 0, 8);
        if (rng.chance(0.3)) op.event_type = EventType{"Q" + std::to_string(rng.below(40)), "t"};
        return op;
      }
      case 1: {
        const auto& id = rng.pick(events);
        const auto& ev = g.events.at(id);
        if (ev.arguments.empty()) continue;
        std::vector<std::int64_t> order;
        for (std::size_t i = 0; i < ev.arguments.size(); ++i)
          order.push_back(static_cast<std::int64_t>(i));
        rng.shuffle(order);
        return ReorderArguments{id, order};
      }
      case 2:
        if (entities.empty()) continue;
        return AddArgument{rng.pick(events), rng.pick(kRoles), rng.pick(entities)};
      case 3: {
        const auto& ev = g.events.at(rng.pick(events));
        if (ev.arguments.empty()) continue;
        const auto& a = rng.pick(ev.arguments);
        return RemoveArgument{ev.id, a.role, a.filler};
      }
      case 4: {
        // Mostly siblings, so the edge constrains layout.
        const auto& a = rng.pick(events);
        std::vector<std::string> sibs;
        for (const auto& id : events)
          if (id != a && parent.at(id) == parent.at(a)) sibs.push_back(id);
        const std::string b = (!sibs.empty() && rng.chance(0.8)) ? rng.pick(sibs) : rng.pick(events);
        return AddTemporalEdge{a, b};
      }
      case 5:
        if (g.temporal.empty()) continue;
        {
          const auto& e = rng.pick(g.temporal);
          return RemoveTemporalEdge{e.before, e.after};
        }
      case 6:
        if (g.temporal.empty()) continue;
        {
          const auto& e = rng.pick(g.temporal);
          return ReverseTemporalEdge{e.before, e.after};
        }
      case 7: {
        if (!g.gates.empty() && rng.chance(0.4)) {
          GateSpec gate = rng.pick(g.gates);
          gate.kind = rng.pick(std::vector<GateKind>{GateKind::kAnd, GateKind::kOr, GateKind::kXor});
          return SetGate{gate};
        }
        std::vector<std::string> parents;
        for (const auto& id : events)
          if (g.events.at(id).is_parent()) parents.push_back(id);
        if (parents.empty()) continue;
        const auto& src = rng.pick(parents);
        GateSpec gate;
        gate.id = "g-" + src + "-" + std::to_string(rng.below(3));
        gate.source = src;
        gate.kind = rng.pick(std::vector<GateKind>{GateKind::kAnd, GateKind::kOr, GateKind::kXor});
        gate.placement = GatePlacement::kChildren;
        for (const auto& c : g.events.at(src).children)
          if (rng.chance(0.6)) gate.members.push_back(c);
        if (gate.members.empty()) gate.members.push_back(g.events.at(src).children.front());
        return SetGate{gate};
      }
      case 8:
        if (g.gates.empty()) continue;
        return RemoveGate{rng.pick(g.gates).id};
      case 9: {
        const auto& id = rng.pick(events);
        std::string np = rng.chance(0.2) ? std::string() : rng.pick(events);
        return ReparentEvent{id, np};
      }
      case 10:
        // Deletions cascade; keep them rare so sequences stay interesting.
        if (events.size() < 4 || !rng.chance(0.3)) continue;
        return DeleteEvent{rng.pick(events)};
      case 11:
        if (entities.size() < 2) continue;
        {
          const auto& keep = rng.pick(entities);
          const auto& drop = rng.pick(entities);
          if (keep == drop) continue;
          return MergeEntities{keep, drop};
        }
      case 12: {
        std::vector<const TextProvenance*> spans;
        for (const auto& [_, p] : g.provenance)
          if (const auto* t = std::get_if<TextProvenance>(&p)) spans.push_back(t);
        if (spans.empty()) continue;
        const auto* t = spans[rng.below(spans.size())];
        const auto* doc = corpus.document(t->doc_id);
        if (!doc) continue;
        const std::size_t len = doc->text.length();
        const std::size_t start = rng.below(len - 1);
        const std::size_t end = rng.between(start + 1, std::min(len, start + 30));
        return UpdateTextSpan{t->id, static_cast<std::int64_t>(start),
                              static_cast<std::int64_t>(end)};
      }
      case 13: {
        std::vector<const ImageProvenance*> boxes;
        for (const auto& [_, p] : g.provenance)
          if (const auto* im = std::get_if<ImageProvenance>(&p)) boxes.push_back(im);
        if (boxes.empty()) continue;
        const auto* b = boxes[rng.below(boxes.size())];
        const auto* entry = corpus.image(b->image_id);
        if (!entry) continue;
        return UpdateBoundingBox{b->id, random_box(rng, *entry->image)};
      }
    }
  }
}

editor::EditOp invalid_op(Rng& rng, const InstantiatedGraph& g) {
  switch (rng.below(3)) {
    case 0:
      if (!g.events.empty()) {
        const auto& id = g.events.begin()->first;
        return editor::AddTemporalEdge{id, id};
      }
      [[fallthrough]];
    case 1:
      return editor::DeleteEvent{"no-such-event"};
    default:
      return editor::RemoveGate{"no-such-gate"};
  }
}

}  // namespace ege::testing
