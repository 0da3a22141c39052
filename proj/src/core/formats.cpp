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

#include "core/formats.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <map>
#include <set>

namespace ege::formats {
namespace {

std::string at(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string at(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

Json collect_extra(const Json& obj, std::initializer_list<std::string_view> known) {
  Json extra = Json::object();
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      extra[key] = value;
  }
  return extra;
}

void append_extra(Json& out, const Json& extra) {
  for (const auto& [key, value] : extra.items()) out[key] = value;
}

Json string_array(const std::vector<std::string>& v) {
  Json arr = Json::array();
  for (const auto& s : v) arr.push_back(s);
  return arr;
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void check_unique(const std::vector<std::string>& ids, const std::string& path,
                  const char* what, Diagnostics& d) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (!seen.insert(ids[i]).second)
      d.push_back(error("DUPLICATE_ID", ids[i],
                        std::string(what) + " id '" + ids[i] + "' repeated",
                        at(path, i)));
}

}  // namespace

// ---------------------------------------------------------------------------
// JsonReader

void JsonReader::fail(const std::string& path, const std::string& message) {
  diags_.push_back(error("SYNTAX", "", message, path));
}

bool JsonReader::expect_object(const Json& j, const std::string& path) {
  if (j.is_object()) return true;
  fail(path, "expected an object");
  return false;
}

bool JsonReader::expect_array(const Json& j, const std::string& path) {
  if (j.is_array()) return true;
  fail(path, "expected an array");
  return false;
}

bool JsonReader::has(const Json& obj, std::string_view key) const {
  return obj.is_object() && obj.contains(key);
}

namespace {
template <class Check, class Get, class T>
bool read_field(JsonReader& r, const Json& obj, std::string_view key,
                const std::string& path, T& out, bool required, Check check,
                Get get, const char* type_name) {
  if (!obj.contains(key)) {
    if (required) r.fail(at(path, key), "missing required field");
    return !required;
  }
  const Json& v = obj.at(key);
  if (!check(v)) {
    r.fail(at(path, key), std::string("expected ") + type_name);
    return false;
  }
  out = get(v);
  return true;
}
}  // namespace

bool JsonReader::read(const Json& obj, std::string_view key, const std::string& path,
                      std::string& out, bool required) {
  return read_field(
      *this, obj, key, path, out, required, [](const Json& v) { return v.is_string(); },
      [](const Json& v) { return v.get<std::string>(); }, "a string");
}

bool JsonReader::read(const Json& obj, std::string_view key, const std::string& path,
                      std::int64_t& out, bool required) {
  return read_field(
      *this, obj, key, path, out, required,
      [](const Json& v) {
        return v.is_number_integer() &&
               (!v.is_number_unsigned() ||
                v.get<std::uint64_t>() <=
                    static_cast<std::uint64_t>(INT64_MAX));
      },
      [](const Json& v) { return v.get<std::int64_t>(); }, "an integer");
}

bool JsonReader::read(const Json& obj, std::string_view key, const std::string& path,
                      double& out, bool required) {
  return read_field(
      *this, obj, key, path, out, required, [](const Json& v) { return v.is_number(); },
      [](const Json& v) { return v.get<double>(); }, "a number");
}

bool JsonReader::read(const Json& obj, std::string_view key, const std::string& path,
                      bool& out, bool required) {
  return read_field(
      *this, obj, key, path, out, required, [](const Json& v) { return v.is_boolean(); },
      [](const Json& v) { return v.get<bool>(); }, "a boolean");
}

bool JsonReader::read(const Json& obj, std::string_view key, const std::string& path,
                      std::vector<std::string>& out, bool required) {
  return read_field(
      *this, obj, key, path, out, required,
      [](const Json& v) {
        return v.is_array() &&
               std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_string(); });
      },
      [](const Json& v) { return v.get<std::vector<std::string>>(); },
      "an array of strings");
}

bool JsonReader::read_event_type(const Json& j, const std::string& path, EventType& out) {
  if (!expect_object(j, path)) return false;
  bool ok = read(j, "qnode", path, out.qnode);
  ok = read(j, "name", path, out.name, false) && ok;
  return ok;
}

bool JsonReader::read_bbox(const Json& j, const std::string& path, BoundingBox& out) {
  if (!j.is_array() || j.size() != 4 ||
      !std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number_integer(); })) {
    fail(path, "expected [x, y, w, h] integer pixels");
    return false;
  }
  out = {j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>(),
         j[3].get<std::int64_t>()};
  return true;
}

bool JsonReader::read_gate(const Json& obj, const std::string& path, GateSpec& out) {
  if (!expect_object(obj, path)) return false;
  bool ok = read(obj, "id", path, out.id);
  ok = read(obj, "source", path, out.source) && ok;
  std::string kind, placement;
  if (read(obj, "kind", path, kind)) {
    if (auto k = parse_gate_kind(kind)) {
      out.kind = *k;
    } else {
      fail(at(path, "kind"), "gate kind must be AND, OR or XOR");
      ok = false;
    }
  } else {
    ok = false;
  }
  ok = read(obj, "members", path, out.members) && ok;
  if (read(obj, "placement", path, placement)) {
    if (auto p = parse_gate_placement(placement)) {
      out.placement = *p;
    } else {
      fail(at(path, "placement"), "placement must be children or successors");
      ok = false;
    }
  } else {
    ok = false;
  }
  return ok;
}

bool JsonReader::read_provenance(const Json& obj, const std::string& path, Provenance& out) {
  if (!expect_object(obj, path)) return false;
  std::string kind;
  if (!read(obj, "kind", path, kind)) return false;
  if (kind == "text") {
    TextProvenance t;
    bool ok = read(obj, "id", path, t.id);
    ok = read(obj, "doc_id", path, t.doc_id) && ok;
    ok = read(obj, "start", path, t.start) && ok;
    ok = read(obj, "end", path, t.end) && ok;
    ok = read(obj, "text", path, t.text) && ok;
    out = std::move(t);
    return ok;
  }
  if (kind == "image") {
    ImageProvenance im;
    bool ok = read(obj, "id", path, im.id);
    ok = read(obj, "image_id", path, im.image_id) && ok;
    if (obj.contains("bbox"))
      ok = read_bbox(obj.at("bbox"), at(path, "bbox"), im.bbox) && ok;
    else {
      fail(at(path, "bbox"), "missing required field");
      ok = false;
    }
    out = std::move(im);
    return ok;
  }
  fail(at(path, "kind"), "provenance kind must be text or image");
  return false;
}

std::optional<Json> parse_json(std::string_view text, Diagnostics& diags) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    diags.push_back(error("SYNTAX", "", e.what(),
                          std::to_string(line) + ":" + std::to_string(col)));
    return std::nullopt;
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

const char* to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::kSchema: return "schema";
    case DocumentKind::kInstance: return "instance";
    case DocumentKind::kCorpus: return "corpus";
    case DocumentKind::kGraph: return "graph";
    case DocumentKind::kUnknown: return "unknown";
  }
  return "unknown";
}

DocumentKind detect_kind(std::string_view text) {
  Diagnostics ignored;
  auto j = parse_json(text, ignored);
  if (!j || !j->is_object()) return DocumentKind::kUnknown;
  if (j->contains("documents")) return DocumentKind::kCorpus;
  if (j->contains("match_pairs") || j->contains("gates")) return DocumentKind::kGraph;
  if (j->contains("roots")) return DocumentKind::kSchema;
  if (j->contains("entities") || j->contains("provenance")) return DocumentKind::kInstance;
  if (j->contains("events")) return DocumentKind::kInstance;
  return DocumentKind::kUnknown;
}

// ---------------------------------------------------------------------------
// Schema

const SchemaEvent* SchemaFile::find(const std::string& id) const {
  for (const auto& e : events)
    if (e.id == id) return &e;
  return nullptr;
}

namespace {

void check_schema(const SchemaFile& s, Diagnostics& d) {
  std::vector<std::string> ids;
  for (const auto& e : s.events) ids.push_back(e.id);
  check_unique(ids, "events", "event", d);
  std::map<std::string, const SchemaEvent*> by_id;
  for (const auto& e : s.events) by_id.emplace(e.id, &e);

  auto ref = [&](const std::string& id, const std::string& subject,
                 const std::string& path) {
    if (by_id.count(id)) return true;
    d.push_back(error("SCHEMA_REF", id, "'" + id + "' referenced by '" + subject +
                                            "' is not a schema event", path));
    return false;
  };

  std::map<std::string, std::vector<std::string>> parents;
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const auto& e = s.events[i];
    const std::string path = at("events", i);
    for (std::size_t k = 0; k < e.children.size(); ++k) {
      if (e.children[k] == e.id) {
        d.push_back(error("HIERARCHY", e.id, "event lists itself as a child",
                          at(at(path, "children"), k)));
        continue;
      }
      if (ref(e.children[k], e.id, at(at(path, "children"), k)))
        parents[e.children[k]].push_back(e.id);
    }
    for (std::size_t k = 0; k < e.outlinks.size(); ++k) {
      if (e.outlinks[k] == e.id)
        d.push_back(error("TEMPORAL_SELF", e.id, "event precedes itself",
                          at(at(path, "outlinks"), k)));
      else
        ref(e.outlinks[k], e.id, at(at(path, "outlinks"), k));
    }
    if (e.gate) {
      const std::string gpath = at(path, "gate");
      if (e.gate->members.empty())
        d.push_back(error("GATE_ARITY", e.id, "gate has no members", at(gpath, "members")));
      std::set<std::string> seen;
      for (std::size_t k = 0; k < e.gate->members.size(); ++k) {
        const auto& m = e.gate->members[k];
        const std::string mpath = at(at(gpath, "members"), k);
        if (!seen.insert(m).second) {
          d.push_back(error("GATE_DUPLICATE_MEMBER", e.id, "member '" + m + "' repeated", mpath));
          continue;
        }
        if (!ref(m, e.id, mpath)) continue;
        const auto& pool =
            e.gate->placement == GatePlacement::kChildren ? e.children : e.outlinks;
        if (std::find(pool.begin(), pool.end(), m) == pool.end())
          d.push_back(error("GATE_PLACEMENT", e.id,
                            "member '" + m + "' is not among the event's " +
                                (e.gate->placement == GatePlacement::kChildren
                                     ? "children"
                                     : "outlinks"),
                            mpath));
      }
    }
  }
  for (std::size_t k = 0; k < s.roots.size(); ++k) {
    const auto& r = s.roots[k];
    if (!ref(r, s.id, at("roots", k))) continue;
    if (parents.count(r))
      d.push_back(error("HIERARCHY", r, "root has a parent", at("roots", k)));
  }
  for (const auto& [child, ps] : parents)
    if (ps.size() > 1)
      d.push_back(error("HIERARCHY", child, "event has more than one parent"));

  // Every event must hang below some root; this also rules out cycles.
  std::set<std::string> reached;
  std::vector<std::string> stack(s.roots.begin(), s.roots.end());
  while (!stack.empty()) {
    std::string id = stack.back();
    stack.pop_back();
    if (!by_id.count(id) || !reached.insert(id).second) continue;
    for (const auto& c : by_id[id]->children) stack.push_back(c);
  }
  for (const auto& e : s.events)
    if (!reached.count(e.id))
      d.push_back(error("HIERARCHY", e.id, "event is not reachable from the roots"));
}

}  // namespace

Result<SchemaFile> parse_schema(std::string_view text) {
  Diagnostics d;
  auto doc = parse_json(text, d);
  if (!doc) return d;
  JsonReader r(d);
  if (!r.expect_object(*doc, "")) return d;

  SchemaFile s;
  r.read(*doc, "id", "", s.id, false);
  r.read(*doc, "name", "", s.name, false);
  r.read(*doc, "roots", "", s.roots);
  s.extra = collect_extra(*doc, {"id", "name", "events", "roots"});
  if (!doc->contains("events")) {
    r.fail("events", "missing required field");
  } else if (r.expect_array(doc->at("events"), "events")) {
    const Json& events = doc->at("events");
    for (std::size_t i = 0; i < events.size(); ++i) {
      const Json& ej = events[i];
      const std::string path = at("events", i);
      if (!r.expect_object(ej, path)) continue;
      SchemaEvent e;
      r.read(ej, "id", path, e.id);
      r.read(ej, "name", path, e.name);
      r.read(ej, "description", path, e.description, false);
      r.read(ej, "wd_node", path, e.wd_node, false);
      r.read(ej, "wd_name", path, e.wd_name, false);
      r.read(ej, "children", path, e.children, false);
      r.read(ej, "outlinks", path, e.outlinks, false);
      if (ej.contains("gate")) {
        const Json& gj = ej.at("gate");
        const std::string gpath = at(path, "gate");
        if (r.expect_object(gj, gpath)) {
          SchemaGate gate;
          std::string kind, placement = "children";
          if (r.read(gj, "kind", gpath, kind)) {
            if (auto k = parse_gate_kind(kind))
              gate.kind = *k;
            else
              r.fail(at(gpath, "kind"), "gate kind must be AND, OR or XOR");
          }
          r.read(gj, "members", gpath, gate.members);
          if (r.read(gj, "placement", gpath, placement, false)) {
            if (auto p = parse_gate_placement(placement))
              gate.placement = *p;
            else
              r.fail(at(gpath, "placement"), "placement must be children or successors");
          }
          gate.extra = collect_extra(gj, {"kind", "members", "placement"});
          e.gate = std::move(gate);
        }
      }
      if (ej.contains("arg_roles") && r.expect_array(ej.at("arg_roles"), at(path, "arg_roles"))) {
        const Json& roles = ej.at("arg_roles");
        for (std::size_t k = 0; k < roles.size(); ++k) {
          const std::string rpath = at(at(path, "arg_roles"), k);
          if (!r.expect_object(roles[k], rpath)) continue;
          ArgRole role;
          r.read(roles[k], "role", rpath, role.role);
          r.read(roles[k], "allowed_types", rpath, role.allowed_types, false);
          role.extra = collect_extra(roles[k], {"role", "allowed_types"});
          e.arg_roles.push_back(std::move(role));
        }
      }
      e.extra = collect_extra(ej, {"id", "name", "description", "wd_node", "wd_name",
                                   "children", "gate", "outlinks", "arg_roles"});
      s.events.push_back(std::move(e));
    }
  }
  if (has_errors(d)) {
    sort_diagnostics(d);
    return d;
  }
  check_schema(s, d);
  sort_diagnostics(d);
  if (has_errors(d)) return d;
  return {std::move(s), std::move(d)};
}

std::string serialize_schema(const SchemaFile& s) {
  Json out = Json::object();
  out["id"] = s.id;
  out["name"] = s.name;
  Json events = Json::array();
  for (const auto& e : s.events) {
    Json ej = Json::object();
    ej["id"] = e.id;
    ej["name"] = e.name;
    ej["description"] = e.description;
    ej["wd_node"] = e.wd_node;
    ej["wd_name"] = e.wd_name;
    ej["children"] = string_array(e.children);
    if (e.gate) {
      Json gj = Json::object();
      gj["kind"] = to_string(e.gate->kind);
      gj["members"] = string_array(e.gate->members);
      gj["placement"] = to_string(e.gate->placement);
      append_extra(gj, e.gate->extra);
      ej["gate"] = std::move(gj);
    }
    ej["outlinks"] = string_array(e.outlinks);
    Json roles = Json::array();
    for (const auto& role : e.arg_roles) {
      Json rj = Json::object();
      rj["role"] = role.role;
      rj["allowed_types"] = string_array(role.allowed_types);
      append_extra(rj, role.extra);
      roles.push_back(std::move(rj));
    }
    ej["arg_roles"] = std::move(roles);
    append_extra(ej, e.extra);
    events.push_back(std::move(ej));
  }
  out["events"] = std::move(events);
  out["roots"] = string_array(s.roots);
  append_extra(out, s.extra);
  return dump(out);
}

// ---------------------------------------------------------------------------
// Instance

namespace {

void check_span(std::int64_t start, std::int64_t end, const std::string& subject,
                const std::string& path, Diagnostics& d) {
  if (start < 0 || start >= end)
    d.push_back(error("OFFSET_ORDER", subject,
                      "span [" + std::to_string(start) + ", " + std::to_string(end) +
                          ") violates 0 <= start < end",
                      path));
}

void check_instance(const InstanceFile& inst, Diagnostics& d) {
  std::vector<std::string> event_ids, entity_ids, prov_ids;
  for (const auto& e : inst.events) event_ids.push_back(e.id);
  for (const auto& e : inst.entities) entity_ids.push_back(e.id);
  for (const auto& p : inst.provenance) prov_ids.push_back(provenance_id(p.record));
  check_unique(event_ids, "events", "event", d);
  check_unique(entity_ids, "entities", "entity", d);
  check_unique(prov_ids, "provenance", "provenance", d);
  const std::set<std::string> events(event_ids.begin(), event_ids.end());
  const std::set<std::string> entities(entity_ids.begin(), entity_ids.end());
  const std::set<std::string> provs(prov_ids.begin(), prov_ids.end());

  auto prov_refs = [&](const std::vector<std::string>& ids, const std::string& subject,
                       const std::string& path) {
    for (std::size_t k = 0; k < ids.size(); ++k)
      if (!provs.count(ids[k]))
        d.push_back(error("INSTANCE_REF", subject,
                          "provenance '" + ids[k] + "' is not defined", at(path, k)));
  };

  for (std::size_t i = 0; i < inst.events.size(); ++i) {
    const auto& e = inst.events[i];
    const std::string path = at("events", i);
    if (e.trigger) check_span(e.trigger->start, e.trigger->end, e.id, at(path, "trigger"), d);
    if (e.confidence && !(*e.confidence >= 0.0 && *e.confidence <= 1.0))
      d.push_back(error("CONFIDENCE_RANGE", e.id, "confidence outside [0,1]",
                        at(path, "confidence")));
    std::set<std::pair<std::string, std::string>> pairs;
    std::set<std::int64_t> orders;
    for (std::size_t k = 0; k < e.arguments.size(); ++k) {
      const auto& a = e.arguments[k];
      const std::string apath = at(at(path, "arguments"), k);
      if (!entities.count(a.filler))
        d.push_back(error("INSTANCE_REF", e.id,
                          "argument filler '" + a.filler + "' is not an entity", apath));
      if (!pairs.emplace(a.role, a.filler).second)
        d.push_back(error("ARG_DUPLICATE", e.id, "argument repeated", apath));
      if (a.order < 0 || !orders.insert(a.order).second)
        d.push_back(error("ARG_ORDER_DUPLICATE", e.id,
                          "argument order must be unique and non-negative", apath));
    }
    prov_refs(e.provenance, e.id, at(path, "provenance"));
  }
  for (std::size_t i = 0; i < inst.entities.size(); ++i) {
    const auto& e = inst.entities[i];
    if (e.name.empty())
      d.push_back(error("ENTITY_NAME_EMPTY", e.id, "entity name is empty",
                        at(at("entities", i), "name")));
    prov_refs(e.provenance, e.id, at(at("entities", i), "provenance"));
  }
  std::set<TemporalEdge> seen;
  for (std::size_t i = 0; i < inst.temporal.size(); ++i) {
    const auto& t = inst.temporal[i];
    const std::string path = at("temporal", i);
    for (const auto* end : {&t.before, &t.after})
      if (!events.count(*end))
        d.push_back(error("INSTANCE_REF", *end, "temporal endpoint is not an event", path));
    if (t.before == t.after)
      d.push_back(error("TEMPORAL_SELF", t.before, "event precedes itself", path));
    if (!seen.insert(t).second)
      d.push_back(error("TEMPORAL_DUPLICATE", t.before, "duplicate temporal edge", path));
  }
  for (std::size_t i = 0; i < inst.provenance.size(); ++i) {
    const auto& rec = inst.provenance[i].record;
    const std::string path = at("provenance", i);
    if (const auto* t = std::get_if<TextProvenance>(&rec)) {
      check_span(t->start, t->end, t->id, path, d);
    } else {
      const auto& b = std::get<ImageProvenance>(rec).bbox;
      if (b.w <= 0 || b.h <= 0 || b.x < 0 || b.y < 0)
        d.push_back(error("INVALID_BBOX", provenance_id(rec),
                          "bounding box needs x, y >= 0 and w, h > 0", at(path, "bbox")));
    }
  }
}

bool read_arguments(JsonReader& r, const Json& obj, const std::string& path,
                    std::vector<Argument>& out) {
  if (!obj.contains("arguments")) return true;
  const Json& args = obj.at("arguments");
  const std::string apath = at(path, "arguments");
  if (!r.expect_array(args, apath)) return false;
  bool ok = true;
  for (std::size_t k = 0; k < args.size(); ++k) {
    const std::string p = at(apath, k);
    if (!r.expect_object(args[k], p)) {
      ok = false;
      continue;
    }
    Argument a;
    ok = r.read(args[k], "role", p, a.role) && ok;
    ok = r.read(args[k], "filler", p, a.filler) && ok;
    a.order = static_cast<std::int64_t>(k);
    ok = r.read(args[k], "order", p, a.order, false) && ok;
    out.push_back(std::move(a));
  }
  return ok;
}

Json arguments_json(const std::vector<Argument>& args) {
  Json arr = Json::array();
  for (const auto& a : args) arr.push_back(to_json(a));
  return arr;
}

}  // namespace

Result<InstanceFile> parse_instance(std::string_view text) {
  Diagnostics d;
  auto doc = parse_json(text, d);
  if (!doc) return d;
  JsonReader r(d);
  if (!r.expect_object(*doc, "")) return d;

  InstanceFile inst;
  inst.extra = collect_extra(*doc, {"events", "entities", "temporal", "provenance"});
  if (!doc->contains("events")) r.fail("events", "missing required field");

  if (doc->contains("events") && r.expect_array(doc->at("events"), "events")) {
    const Json& events = doc->at("events");
    for (std::size_t i = 0; i < events.size(); ++i) {
      const std::string path = at("events", i);
      const Json& ej = events[i];
      if (!r.expect_object(ej, path)) continue;
      InstanceEvent e;
      r.read(ej, "id", path, e.id);
      r.read(ej, "name", path, e.name);
      r.read(ej, "description", path, e.description, false);
      if (ej.contains("type")) r.read_event_type(ej.at("type"), at(path, "type"), e.type);
      if (ej.contains("trigger")) {
        const Json& tj = ej.at("trigger");
        const std::string tpath = at(path, "trigger");
        if (r.expect_object(tj, tpath)) {
          Trigger t;
          r.read(tj, "text", tpath, t.text);
          r.read(tj, "doc_id", tpath, t.doc_id);
          r.read(tj, "start", tpath, t.start);
          r.read(tj, "end", tpath, t.end);
          e.trigger = std::move(t);
        }
      }
      read_arguments(r, ej, path, e.arguments);
      if (ej.contains("confidence")) {
        double c = 0;
        if (r.read(ej, "confidence", path, c)) e.confidence = c;
      }
      r.read(ej, "provenance", path, e.provenance, false);
      e.extra = collect_extra(ej, {"id", "trigger", "type", "name", "description",
                                   "arguments", "confidence", "provenance"});
      inst.events.push_back(std::move(e));
    }
  }
  if (doc->contains("entities") && r.expect_array(doc->at("entities"), "entities")) {
    const Json& ents = doc->at("entities");
    for (std::size_t i = 0; i < ents.size(); ++i) {
      const std::string path = at("entities", i);
      if (!r.expect_object(ents[i], path)) continue;
      InstanceEntity e;
      r.read(ents[i], "id", path, e.id);
      r.read(ents[i], "name", path, e.name);
      std::string q;
      if (ents[i].contains("wd_qnode") && r.read(ents[i], "wd_qnode", path, q)) e.wd_qnode = q;
      r.read(ents[i], "provenance", path, e.provenance, false);
      e.extra = collect_extra(ents[i], {"id", "name", "wd_qnode", "provenance"});
      inst.entities.push_back(std::move(e));
    }
  }
  if (doc->contains("temporal") && r.expect_array(doc->at("temporal"), "temporal")) {
    const Json& edges = doc->at("temporal");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string path = at("temporal", i);
      if (!r.expect_object(edges[i], path)) continue;
      TemporalEdge t;
      r.read(edges[i], "before", path, t.before);
      r.read(edges[i], "after", path, t.after);
      inst.temporal.push_back(std::move(t));
    }
  }
  if (doc->contains("provenance") && r.expect_array(doc->at("provenance"), "provenance")) {
    const Json& recs = doc->at("provenance");
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const std::string path = at("provenance", i);
      ProvenanceRecord rec;
      if (!r.read_provenance(recs[i], path, rec.record)) continue;
      const bool text = std::holds_alternative<TextProvenance>(rec.record);
      rec.extra = text ? collect_extra(recs[i], {"kind", "id", "doc_id", "start", "end", "text"})
                       : collect_extra(recs[i], {"kind", "id", "image_id", "bbox"});
      inst.provenance.push_back(std::move(rec));
    }
  }
  if (has_errors(d)) {
    sort_diagnostics(d);
    return d;
  }
  check_instance(inst, d);
  sort_diagnostics(d);
  if (has_errors(d)) return d;
  return {std::move(inst), std::move(d)};
}

std::string serialize_instance(const InstanceFile& inst) {
  Json out = Json::object();
  Json events = Json::array();
  for (const auto& e : inst.events) {
    Json ej = Json::object();
    ej["id"] = e.id;
    if (e.trigger) {
      Json tj = Json::object();
      tj["text"] = e.trigger->text;
      tj["doc_id"] = e.trigger->doc_id;
      tj["start"] = e.trigger->start;
      tj["end"] = e.trigger->end;
      ej["trigger"] = std::move(tj);
    }
    ej["type"] = to_json(e.type);
    ej["name"] = e.name;
    ej["description"] = e.description;
    ej["arguments"] = arguments_json(e.arguments);
    if (e.confidence) ej["confidence"] = *e.confidence;
    ej["provenance"] = string_array(e.provenance);
    append_extra(ej, e.extra);
    events.push_back(std::move(ej));
  }
  out["events"] = std::move(events);
  Json ents = Json::array();
  for (const auto& e : inst.entities) {
    Json ej = Json::object();
    ej["id"] = e.id;
    ej["name"] = e.name;
    if (e.wd_qnode) ej["wd_qnode"] = *e.wd_qnode;
    ej["provenance"] = string_array(e.provenance);
    append_extra(ej, e.extra);
    ents.push_back(std::move(ej));
  }
  out["entities"] = std::move(ents);
  Json edges = Json::array();
  for (const auto& t : inst.temporal) edges.push_back({{"before", t.before}, {"after", t.after}});
  out["temporal"] = std::move(edges);
  Json recs = Json::array();
  for (const auto& p : inst.provenance) {
    Json pj = to_json(p.record);
    append_extra(pj, p.extra);
    recs.push_back(std::move(pj));
  }
  out["provenance"] = std::move(recs);
  append_extra(out, inst.extra);
  return dump(out);
}

InstantiatedGraph instance_as_graph(const InstanceFile& inst) {
  InstantiatedGraph g;
  for (const auto& e : inst.events) {
    EventNode n;
    n.id = e.id;
    n.name = e.name;
    n.description = e.description;
    n.event_type = e.type;
    n.status = EventStatus::kSourceOnly;
    n.confidence = e.confidence.value_or(1.0);
    n.arguments = e.arguments;
    n.provenance = e.provenance;
    g.events.emplace(n.id, std::move(n));
    g.roots.push_back(e.id);
  }
  for (const auto& e : inst.entities)
    g.entities.emplace(e.id, EntityNode{e.id, e.name, e.wd_qnode, e.provenance});
  g.temporal = inst.temporal;
  for (const auto& p : inst.provenance) g.provenance.emplace(provenance_id(p.record), p.record);
  return g;
}

// ---------------------------------------------------------------------------
// Corpus

std::size_t CorpusFile::image_count() const {
  std::size_t n = 0;
  for (const auto& d : documents) n += d.images.size();
  return n;
}

Result<CorpusFile> parse_corpus(std::string_view text) {
  Diagnostics d;
  auto doc = parse_json(text, d);
  if (!doc) return d;
  JsonReader r(d);
  if (!r.expect_object(*doc, "")) return d;
  CorpusFile c;
  c.extra = collect_extra(*doc, {"documents"});
  if (!doc->contains("documents")) {
    r.fail("documents", "missing required field");
  } else if (r.expect_array(doc->at("documents"), "documents")) {
    const Json& docs = doc->at("documents");
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const std::string path = at("documents", i);
      if (!r.expect_object(docs[i], path)) continue;
      Document dj;
      r.read(docs[i], "doc_id", path, dj.doc_id);
      r.read(docs[i], "title", path, dj.title, false);
      r.read(docs[i], "text", path, dj.text);
      if (docs[i].contains("images") && r.expect_array(docs[i].at("images"), at(path, "images"))) {
        const Json& imgs = docs[i].at("images");
        for (std::size_t k = 0; k < imgs.size(); ++k) {
          const std::string ipath = at(at(path, "images"), k);
          if (!r.expect_object(imgs[k], ipath)) continue;
          ImageRecord im;
          r.read(imgs[k], "image_id", ipath, im.image_id);
          r.read(imgs[k], "media", ipath, im.media, false);
          r.read(imgs[k], "width", ipath, im.width);
          r.read(imgs[k], "height", ipath, im.height);
          im.extra = collect_extra(imgs[k], {"image_id", "media", "width", "height"});
          dj.images.push_back(std::move(im));
        }
      }
      dj.extra = collect_extra(docs[i], {"doc_id", "title", "text", "images"});
      c.documents.push_back(std::move(dj));
    }
  }
  if (has_errors(d)) {
    sort_diagnostics(d);
    return d;
  }
  std::vector<std::string> doc_ids, image_ids;
  for (std::size_t i = 0; i < c.documents.size(); ++i) {
    const auto& dj = c.documents[i];
    doc_ids.push_back(dj.doc_id);
    for (std::size_t k = 0; k < dj.images.size(); ++k) {
      const auto& im = dj.images[k];
      image_ids.push_back(im.image_id);
      if (im.width <= 0 || im.height <= 0)
        d.push_back(error("INVALID_DIMENSIONS", im.image_id, "image width and height must be > 0",
                          at(at(at("documents", i), "images"), k)));
    }
  }
  check_unique(doc_ids, "documents", "document", d);
  check_unique(image_ids, "images", "image", d);
  sort_diagnostics(d);
  if (has_errors(d)) return d;
  return {std::move(c), std::move(d)};
}

std::string serialize_corpus(const CorpusFile& c) {
  Json out = Json::object();
  Json docs = Json::array();
  for (const auto& d : c.documents) {
    Json dj = Json::object();
    dj["doc_id"] = d.doc_id;
    dj["title"] = d.title;
    dj["text"] = d.text;
    Json imgs = Json::array();
    for (const auto& im : d.images) {
      Json ij = Json::object();
      ij["image_id"] = im.image_id;
      ij["media"] = im.media;
      ij["width"] = im.width;
      ij["height"] = im.height;
      append_extra(ij, im.extra);
      imgs.push_back(std::move(ij));
    }
    dj["images"] = std::move(imgs);
    append_extra(dj, d.extra);
    docs.push_back(std::move(dj));
  }
  out["documents"] = std::move(docs);
  append_extra(out, c.extra);
  return dump(out);
}

// ---------------------------------------------------------------------------
// Element conversions

Json to_json(const Diagnostic& d) {
  Json j = Json::object();
  j["code"] = d.code;
  j["severity"] = to_string(d.severity);
  j["subject"] = d.subject;
  j["message"] = d.message;
  if (!d.path.empty()) j["path"] = d.path;
  return j;
}

Json to_json(const Diagnostics& d) {
  Json arr = Json::array();
  for (const auto& x : d) arr.push_back(to_json(x));
  return arr;
}

Json to_json(const EventType& t) {
  Json j = Json::object();
  j["qnode"] = t.qnode;
  j["name"] = t.name;
  return j;
}

Json to_json(const Argument& a) {
  Json j = Json::object();
  j["role"] = a.role;
  j["filler"] = a.filler;
  j["order"] = a.order;
  return j;
}

Json to_json(const EventNode& e) {
  Json j = Json::object();
  j["id"] = e.id;
  j["name"] = e.name;
  j["description"] = e.description;
  j["event_type"] = to_json(e.event_type);
  j["status"] = to_string(e.status);
  j["confidence"] = e.confidence;
  j["children"] = string_array(e.children);
  j["arguments"] = arguments_json(e.arguments);
  j["provenance"] = string_array(e.provenance);
  if (e.schema_ref) j["schema_ref"] = *e.schema_ref;
  if (e.terminal) j["terminal"] = true;
  return j;
}

Json to_json(const EntityNode& e) {
  Json j = Json::object();
  j["id"] = e.id;
  j["name"] = e.name;
  if (e.wd_qnode) j["wd_qnode"] = *e.wd_qnode;
  j["provenance"] = string_array(e.provenance);
  return j;
}

Json to_json(const GateSpec& g) {
  Json j = Json::object();
  j["id"] = g.id;
  j["source"] = g.source;
  j["kind"] = to_string(g.kind);
  j["members"] = string_array(g.members);
  j["placement"] = to_string(g.placement);
  return j;
}

Json to_json(const GateStatus& s) {
  Json j = Json::object();
  j["gate"] = s.gate;
  j["verdict"] = to_string(s.verdict);
  j["occurred"] = string_array(s.occurred);
  return j;
}

Json to_json(const BoundingBox& b) { return Json::array({b.x, b.y, b.w, b.h}); }

Json to_json(const Provenance& p) {
  Json j = Json::object();
  if (const auto* t = std::get_if<TextProvenance>(&p)) {
    j["kind"] = "text";
    j["id"] = t->id;
    j["doc_id"] = t->doc_id;
    j["start"] = t->start;
    j["end"] = t->end;
    j["text"] = t->text;
  } else {
    const auto& im = std::get<ImageProvenance>(p);
    j["kind"] = "image";
    j["id"] = im.id;
    j["image_id"] = im.image_id;
    j["bbox"] = to_json(im.bbox);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Instantiated graph

Json graph_to_json(const InstantiatedGraph& g) {
  Json out = Json::object();
  Json events = Json::array();
  for (const auto& [_, e] : g.events) events.push_back(to_json(e));
  out["events"] = std::move(events);
  Json ents = Json::array();
  for (const auto& [_, e] : g.entities) ents.push_back(to_json(e));
  out["entities"] = std::move(ents);
  Json edges = Json::array();
  for (const auto& t : g.temporal) edges.push_back({{"before", t.before}, {"after", t.after}});
  out["temporal"] = std::move(edges);
  Json gates = Json::array();
  for (const auto& gate : g.gates) gates.push_back(to_json(gate));
  out["gates"] = std::move(gates);
  out["roots"] = string_array(g.roots);
  Json pairs = Json::array();
  for (const auto& p : g.match_pairs)
    pairs.push_back({{"schema", p.schema}, {"instance", p.instance}});
  out["match_pairs"] = std::move(pairs);
  Json provs = Json::array();
  for (const auto& [_, p] : g.provenance) provs.push_back(to_json(p));
  out["provenance"] = std::move(provs);
  out["schema_order"] = string_array(g.schema_order);
  return out;
}

std::string serialize_graph(const InstantiatedGraph& g) { return dump(graph_to_json(g)); }

Result<InstantiatedGraph> parse_graph(std::string_view text) {
  Diagnostics d;
  auto doc = parse_json(text, d);
  if (!doc) return d;
  JsonReader r(d);
  if (!r.expect_object(*doc, "")) return d;
  InstantiatedGraph g;

  auto array_at = [&](std::string_view key) -> const Json* {
    if (!doc->contains(key)) return nullptr;
    const Json& a = doc->at(key);
    return r.expect_array(a, std::string(key)) ? &a : nullptr;
  };

  if (const Json* events = array_at("events")) {
    for (std::size_t i = 0; i < events->size(); ++i) {
      const Json& ej = (*events)[i];
      const std::string path = at("events", i);
      if (!r.expect_object(ej, path)) continue;
      EventNode e;
      r.read(ej, "id", path, e.id);
      r.read(ej, "name", path, e.name);
      r.read(ej, "description", path, e.description, false);
      if (ej.contains("event_type"))
        r.read_event_type(ej.at("event_type"), at(path, "event_type"), e.event_type);
      std::string status;
      if (r.read(ej, "status", path, status)) {
        if (auto s = parse_event_status(status))
          e.status = *s;
        else
          r.fail(at(path, "status"), "status must be matched, source-only or predicted");
      }
      r.read(ej, "confidence", path, e.confidence);
      r.read(ej, "children", path, e.children, false);
      read_arguments(r, ej, path, e.arguments);
      r.read(ej, "provenance", path, e.provenance, false);
      std::string ref;
      if (ej.contains("schema_ref") && r.read(ej, "schema_ref", path, ref)) e.schema_ref = ref;
      r.read(ej, "terminal", path, e.terminal, false);
      const std::string id = e.id;
      if (!g.events.emplace(id, std::move(e)).second)
        d.push_back(error("DUPLICATE_ID", id, "event id repeated", path));
    }
  }
  if (const Json* ents = array_at("entities")) {
    for (std::size_t i = 0; i < ents->size(); ++i) {
      const std::string path = at("entities", i);
      if (!r.expect_object((*ents)[i], path)) continue;
      EntityNode e;
      r.read((*ents)[i], "id", path, e.id);
      r.read((*ents)[i], "name", path, e.name);
      std::string q;
      if ((*ents)[i].contains("wd_qnode") && r.read((*ents)[i], "wd_qnode", path, q))
        e.wd_qnode = q;
      r.read((*ents)[i], "provenance", path, e.provenance, false);
      const std::string id = e.id;
      if (!g.entities.emplace(id, std::move(e)).second)
        d.push_back(error("DUPLICATE_ID", id, "entity id repeated", path));
    }
  }
  if (const Json* edges = array_at("temporal")) {
    for (std::size_t i = 0; i < edges->size(); ++i) {
      const std::string path = at("temporal", i);
      if (!r.expect_object((*edges)[i], path)) continue;
      TemporalEdge t;
      r.read((*edges)[i], "before", path, t.before);
      r.read((*edges)[i], "after", path, t.after);
      g.temporal.push_back(std::move(t));
    }
  }
  if (const Json* gates = array_at("gates")) {
    for (std::size_t i = 0; i < gates->size(); ++i) {
      GateSpec gate;
      if (r.read_gate((*gates)[i], at("gates", i), gate)) g.gates.push_back(std::move(gate));
    }
  }
  r.read(*doc, "roots", "", g.roots, false);
  if (const Json* pairs = array_at("match_pairs")) {
    for (std::size_t i = 0; i < pairs->size(); ++i) {
      const std::string path = at("match_pairs", i);
      if (!r.expect_object((*pairs)[i], path)) continue;
      MatchPair p;
      r.read((*pairs)[i], "schema", path, p.schema);
      r.read((*pairs)[i], "instance", path, p.instance);
      g.match_pairs.push_back(std::move(p));
    }
  }
  if (const Json* provs = array_at("provenance")) {
    for (std::size_t i = 0; i < provs->size(); ++i) {
      Provenance p;
      if (!r.read_provenance((*provs)[i], at("provenance", i), p)) continue;
      const std::string id = provenance_id(p);
      if (!g.provenance.emplace(id, std::move(p)).second)
        d.push_back(error("DUPLICATE_ID", id, "provenance id repeated", at("provenance", i)));
    }
  }
  r.read(*doc, "schema_order", "", g.schema_order, false);
  sort_diagnostics(d);
  if (has_errors(d)) return d;
  return {std::move(g), std::move(d)};
}

}  // namespace ege::formats
