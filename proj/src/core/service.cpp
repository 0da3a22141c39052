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

#include "core/service.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "core/layout.hpp"

namespace ege::service {

namespace fs = std::filesystem;
using formats::Json;

std::string graph_hash(const InstantiatedGraph& g) {
  const std::string text = formats::serialize_graph(g);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

namespace {

constexpr const char* kSchemaFile = "schema.json";
constexpr const char* kInstanceFile = "instance.json";
constexpr const char* kCorpusFile = "corpus.json";
constexpr const char* kMetaFile = "meta.json";
constexpr const char* kLogFile = "oplog.jsonl";

struct Snapshot {
  std::uint64_t revision = 0;
  std::shared_ptr<const InstantiatedGraph> graph;
};

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const fs::path& p, const std::string& text) {
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text;
    if (!out.flush()) return false;
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  return !ec;
}

std::string new_session_id() {
  std::random_device rd;
  std::ostringstream ss;
  ss << std::hex;
  for (int i = 0; i < 4; ++i) {
    const std::uint32_t v = rd();
    ss.width(8);
    ss.fill('0');
    ss << v;
  }
  return ss.str();
}

struct Started {
  std::shared_ptr<const provenance::CorpusIndex> corpus;
  std::unique_ptr<editor::EditSession> edits;
  Diagnostics warnings;
};

Result<Started> start(const SessionInputs& in) {
  auto matched = matcher::match_graphs(in.schema, in.instance, in.config);
  if (!matched) return matched.diagnostics();
  auto corpus = std::make_shared<const provenance::CorpusIndex>(in.corpus);
  Diagnostics d = provenance::check_instance(*corpus, in.instance);
  if (has_errors(d)) return d;
  Started s;
  s.corpus = corpus;
  s.edits = std::make_unique<editor::EditSession>(std::move(matched->graph), corpus);
  s.warnings = std::move(matched->diagnostics);
  return s;
}

Result<SessionInputs> parse_inputs(const std::string& schema, const std::string& instance,
                                   const std::string& corpus, double tau) {
  Diagnostics d;
  auto s = formats::parse_schema(schema);
  auto i = formats::parse_instance(instance);
  auto c = formats::parse_corpus(corpus);
  for (const auto* part : {&s.diagnostics(), &i.diagnostics(), &c.diagnostics()})
    for (const auto& x : *part)
      if (x.severity == Severity::kError) d.push_back(x);
  matcher::MatchConfig cfg{tau};
  for (auto& x : matcher::validate_config(cfg)) d.push_back(std::move(x));
  if (!d.empty()) {
    sort_diagnostics(d);
    return d;
  }
  return SessionInputs{std::move(s).value(), std::move(i).value(), std::move(c).value(), cfg};
}

// One line of the op log.
struct LogEntry {
  std::string kind;  // edits, undo or redo
  std::vector<editor::EditOp> ops;
  std::uint64_t revision = 0;
  std::string hash;
};

Json to_json(const LogEntry& e) {
  Json j = Json::object();
  j["revision"] = e.revision;
  j["kind"] = e.kind;
  Json ops = Json::array();
  for (const auto& op : e.ops) ops.push_back(editor::to_json(op));
  j["ops"] = std::move(ops);
  j["hash"] = e.hash;
  return j;
}

Result<LogEntry> parse_log_entry(std::string_view line, const std::string& where) {
  Diagnostics d;
  auto j = formats::parse_json(line, d);
  if (!j) return d;
  formats::JsonReader r(d);
  if (!r.expect_object(*j, where)) return d;
  LogEntry e;
  std::int64_t rev = 0;
  r.read(*j, "revision", where, rev);
  r.read(*j, "kind", where, e.kind);
  r.read(*j, "hash", where, e.hash);
  if (r.has(*j, "ops") && r.expect_array(j->at("ops"), where + "/ops")) {
    for (std::size_t i = 0; i < j->at("ops").size(); ++i) {
      auto op = editor::op_from_json(j->at("ops")[i], where + "/ops/" + std::to_string(i));
      if (!op) {
        d.insert(d.end(), op.diagnostics().begin(), op.diagnostics().end());
        continue;
      }
      e.ops.push_back(std::move(op).value());
    }
  }
  if (e.kind != "edits" && e.kind != "undo" && e.kind != "redo")
    r.fail(where + "/kind", "kind must be edits, undo or redo");
  if (has_errors(d)) return d;
  e.revision = static_cast<std::uint64_t>(rev);
  return e;
}

Diagnostics run_entry(editor::EditSession& edits, const LogEntry& e) {
  Result<std::size_t> r = e.kind == "undo"   ? edits.undo()
                          : e.kind == "redo" ? edits.redo()
                                             : edits.apply_batch(e.ops);
  return r ? Diagnostics{} : r.diagnostics();
}

Diagnostic mismatch(const std::string& subject, const std::string& message) {
  return error("REPLAY_MISMATCH", subject, message);
}

// ---------------------------------------------------------------------------
// Request parsing

std::string percent_decode(std::string_view s, bool plus_is_space) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '%' && i + 2 < s.size()) {
      const std::string hex(s.substr(i + 1, 2));
      char* end = nullptr;
      const long v = std::strtol(hex.c_str(), &end, 16);
      if (end == hex.c_str() + 2) {
        out.push_back(static_cast<char>(v));
        i += 2;
        continue;
      }
    }
    out.push_back(plus_is_space && c == '+' ? ' ' : c);
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::map<std::string, std::string> parse_query(std::string_view q) {
  std::map<std::string, std::string> out;
  if (q.empty()) return out;
  for (const auto& part : split(q, '&')) {
    if (part.empty()) continue;
    const std::size_t eq = part.find('=');
    const std::string key = percent_decode(part.substr(0, eq), true);
    const std::string value =
        eq == std::string::npos ? std::string() : percent_decode(part.substr(eq + 1), true);
    out.insert_or_assign(key, value);
  }
  return out;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

// ---------------------------------------------------------------------------
// Responses

Response ok(const Json& j, int status = 200) { return {status, formats::dump(j)}; }

Response fail(const Diagnostics& diags, int status) {
  Json errs = Json::array();
  for (const auto& d : diags) {
    if (d.severity != Severity::kError) continue;
    Json e = Json::object();
    e["code"] = d.code;
    e["subject"] = d.subject;
    e["message"] = d.message;
    errs.push_back(std::move(e));
  }
  Json j = Json::object();
  j["errors"] = std::move(errs);
  return {status, formats::dump(j)};
}

Response fail(const Diagnostic& d, int status) { return fail(Diagnostics{d}, status); }

Json summary(const InstantiatedGraph& g) {
  std::size_t matched = 0, source_only = 0, predicted = 0;
  for (const auto& [_, e] : g.events) {
    switch (e.status) {
      case EventStatus::kMatched: ++matched; break;
      case EventStatus::kSourceOnly: ++source_only; break;
      case EventStatus::kPredicted: ++predicted; break;
    }
  }
  Json j = Json::object();
  j["events"] = g.events.size();
  j["matched"] = matched;
  j["source_only"] = source_only;
  j["predicted"] = predicted;
  j["entities"] = g.entities.size();
  j["temporal"] = g.temporal.size();
  j["gates"] = g.gates.size();
  return j;
}

Json id_array(const std::set<std::string>& ids) {
  Json a = Json::array();
  for (const auto& id : ids) a.push_back(id);
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sessions

struct Service::Session {
  std::string id;
  SessionInputs inputs;
  std::shared_ptr<const provenance::CorpusIndex> corpus;
  std::optional<fs::path> dir;

  // Writers hold write_mu for the whole mutation; readers only copy the
  // snapshot pointer.
  std::mutex write_mu;
  std::unique_ptr<editor::EditSession> edits;
  std::uint64_t revision = 0;

  mutable std::mutex snap_mu;
  std::shared_ptr<const Snapshot> snap;

  std::shared_ptr<const Snapshot> snapshot() const {
    std::lock_guard lock(snap_mu);
    return snap;
  }
  void publish() {
    auto s = std::make_shared<const Snapshot>(Snapshot{revision, edits->current()});
    std::lock_guard lock(snap_mu);
    snap = std::move(s);
  }

  bool append_log(const LogEntry& e) const {
    if (!dir) return true;
    std::ofstream out(*dir / kLogFile, std::ios::binary | std::ios::app);
    if (!out) return false;
    out << to_json(e).dump() << '\n';
    return static_cast<bool>(out.flush());
  }
};

Result<Replayed> replay_session(const fs::path& dir) {
  auto schema = read_file(dir / kSchemaFile);
  auto instance = read_file(dir / kInstanceFile);
  auto corpus = read_file(dir / kCorpusFile);
  auto meta_text = read_file(dir / kMetaFile);
  if (!schema || !instance || !corpus || !meta_text)
    return error("IO", dir.string(), "session directory is missing base files");
  Diagnostics d;
  auto meta = formats::parse_json(*meta_text, d);
  if (!meta) return d;
  formats::JsonReader r(d);
  double tau = matcher::MatchConfig{}.tau;
  std::string base_hash;
  if (r.expect_object(*meta, kMetaFile)) {
    r.read(*meta, "tau", kMetaFile, tau);
    r.read(*meta, "base_hash", kMetaFile, base_hash);
  }
  if (has_errors(d)) return d;

  auto inputs = parse_inputs(*schema, *instance, *corpus, tau);
  if (!inputs) return inputs.diagnostics();
  auto started = start(*inputs);
  if (!started) return started.diagnostics();

  Replayed out;
  out.inputs = std::move(inputs).value();
  out.corpus = started->corpus;
  out.edits = std::move(started->edits);
  out.hash = graph_hash(*out.edits->current());
  if (out.hash != base_hash)
    return mismatch(dir.filename().string(), "base graph hash differs from the recorded one");

  const std::string log = read_file(dir / kLogFile).value_or("");
  std::size_t line_no = 0;
  for (const auto& line : split(log, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = std::string(kLogFile) + ":" + std::to_string(line_no);
    auto entry = parse_log_entry(line, where);
    if (!entry) {
      Diagnostics bad = entry.diagnostics();
      bad.push_back(mismatch(where, "op log entry is unreadable"));
      return bad;
    }
    if (entry->revision != out.revision + 1)
      return mismatch(where, "revision " + std::to_string(entry->revision) + " does not follow " +
                                 std::to_string(out.revision));
    if (Diagnostics failed = run_entry(*out.edits, *entry); !failed.empty()) {
      failed.push_back(mismatch(where, "logged " + entry->kind + " no longer applies"));
      return failed;
    }
    out.revision = entry->revision;
    out.hash = graph_hash(*out.edits->current());
    if (out.hash != entry->hash)
      return mismatch(where, "graph hash after revision " + std::to_string(out.revision) +
                                 " differs from the recorded one");
  }
  return out;
}

Service::Service(std::optional<fs::path> data_dir) : data_dir_(std::move(data_dir)) {}

Service::~Service() = default;

Diagnostics Service::load() {
  Diagnostics d;
  if (!data_dir_) return d;
  std::error_code ec;
  if (!fs::exists(*data_dir_, ec)) return d;
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(*data_dir_, ec))
    if (entry.is_directory()) dirs.push_back(entry.path());
  if (ec) d.push_back(error("IO", data_dir_->string(), ec.message()));
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    auto replayed = replay_session(dir);
    if (!replayed) {
      for (auto x : replayed.diagnostics()) {
        if (x.subject.empty()) x.subject = dir.filename().string();
        d.push_back(std::move(x));
      }
      continue;
    }
    auto s = std::make_shared<Session>();
    s->id = dir.filename().string();
    s->inputs = std::move(replayed->inputs);
    s->corpus = replayed->corpus;
    s->edits = std::move(replayed->edits);
    s->revision = replayed->revision;
    s->dir = dir;
    s->publish();
    std::unique_lock lock(sessions_mu_);
    sessions_.insert_or_assign(s->id, std::move(s));
  }
  sort_diagnostics(d);
  return d;
}

std::vector<std::string> Service::session_ids() const {
  std::shared_lock lock(sessions_mu_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

std::shared_ptr<Service::Session> Service::find(const std::string& id) const {
  std::shared_lock lock(sessions_mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

Response Service::create_session(const std::string& body) {
  Diagnostics d;
  auto j = formats::parse_json(body, d);
  if (!j) return fail(d, 400);
  formats::JsonReader r(d);
  if (!r.expect_object(*j, "")) return fail(d, 400);
  for (const char* key : {"schema", "instance", "corpus"})
    if (!j->contains(key)) r.fail(key, "missing required field");
  double tau = matcher::MatchConfig{}.tau;
  r.read(*j, "tau", "", tau, false);
  if (has_errors(d)) return fail(d, 400);

  auto inputs = parse_inputs(formats::dump(j->at("schema")), formats::dump(j->at("instance")),
                             formats::dump(j->at("corpus")), tau);
  if (!inputs) return fail(inputs.diagnostics(), 422);
  auto started = start(*inputs);
  if (!started) return fail(started.diagnostics(), 422);

  auto s = std::make_shared<Session>();
  s->inputs = std::move(inputs).value();
  s->corpus = started->corpus;
  s->edits = std::move(started->edits);
  {
    // Ids are 128 random bits; the loop only guards the impossible collision.
    std::shared_lock lock(sessions_mu_);
    do s->id = new_session_id();
    while (sessions_.count(s->id));
  }
  if (data_dir_) {
    const fs::path dir = *data_dir_ / s->id;
    std::error_code ec;
    fs::create_directories(dir, ec);
    Json meta = Json::object();
    meta["session_id"] = s->id;
    meta["tau"] = s->inputs.config.tau;
    meta["base_hash"] = graph_hash(s->edits->base());
    const bool written =
        !ec && write_file(dir / kSchemaFile, formats::serialize_schema(s->inputs.schema)) &&
        write_file(dir / kInstanceFile, formats::serialize_instance(s->inputs.instance)) &&
        write_file(dir / kCorpusFile, formats::serialize_corpus(s->inputs.corpus)) &&
        write_file(dir / kMetaFile, formats::dump(meta)) && write_file(dir / kLogFile, "");
    if (!written) return fail(error("IO", s->id, "cannot persist session to " + dir.string()), 500);
    s->dir = dir;
  }
  s->publish();
  const auto snap = s->snapshot();
  Json out = Json::object();
  out["session_id"] = s->id;
  out["revision"] = snap->revision;
  out["summary"] = summary(*snap->graph);
  out["warnings"] = formats::to_json(started->warnings);
  {
    std::unique_lock lock(sessions_mu_);
    sessions_.emplace(s->id, s);
  }
  return ok(out, 201);
}

Response Service::handle(const std::string& method, const std::string& target,
                         const std::string& body) {
  const std::size_t qpos = target.find('?');
  const std::string path = target.substr(0, qpos);
  const auto query =
      parse_query(qpos == std::string::npos ? std::string_view() : std::string_view(target).substr(qpos + 1));
  std::vector<std::string> segs;
  for (const auto& raw : split(path, '/'))
    if (!raw.empty()) segs.push_back(percent_decode(raw, false));

  if (segs.empty() || segs[0] != "sessions")
    return fail(error("NOT_FOUND", path, "no such route"), 404);
  if (segs.size() == 1) {
    if (method == "POST") return create_session(body);
    if (method == "GET") {
      Json ids = Json::array();
      for (const auto& id : session_ids()) ids.push_back(id);
      Json out = Json::object();
      out["sessions"] = std::move(ids);
      return ok(out);
    }
    return fail(error("METHOD_NOT_ALLOWED", path, method + " is not supported here"), 405);
  }
  auto s = find(segs[1]);
  if (!s) return fail(error("UNKNOWN_SESSION", segs[1], "no session with this id"), 404);
  return route_session(method, *s, std::vector<std::string>(segs.begin() + 2, segs.end()), query,
                       body);
}

Response Service::route_session(const std::string& method, Session& s,
                                const std::vector<std::string>& rest,
                                const std::map<std::string, std::string>& query,
                                const std::string& body) {
  auto is = [&](std::initializer_list<const char*> parts) {
    if (rest.size() != parts.size()) return false;
    std::size_t i = 0;
    for (const char* p : parts) {
      if (p[0] != '*' && rest[i] != p) return false;
      ++i;
    }
    return true;
  };
  auto param = [&](const char* key) -> std::optional<std::string> {
    auto it = query.find(key);
    if (it == query.end()) return std::nullopt;
    return it->second;
  };
  const std::string where = "/sessions/" + s.id;

  if (method == "POST") {
    const bool edits = is({"edits"});
    if (!edits && !is({"undo"}) && !is({"redo"}))
      return fail(error("NOT_FOUND", where, "no such route"), 404);
    LogEntry entry;
    if (edits) {
      Diagnostics d;
      auto j = formats::parse_json(body, d);
      if (!j) return fail(d, 400);
      const Json* list = &*j;
      if (j->is_object() && j->contains("ops")) list = &j->at("ops");
      if (!list->is_array())
        return fail(error("SYNTAX", "", "expected an array of edit ops or {\"ops\": [...]}"), 400);
      for (std::size_t i = 0; i < list->size(); ++i) {
        auto op = editor::op_from_json((*list)[i], "/ops/" + std::to_string(i));
        if (!op) {
          Diagnostics bad = op.diagnostics();
          bad.push_back(error("ATOMICITY_ABORT", std::to_string(i),
                              "batch aborted at op " + std::to_string(i) +
                                  "; nothing was committed"));
          return fail(bad, 400);
        }
        entry.ops.push_back(std::move(op).value());
      }
      entry.kind = "edits";
    } else {
      entry.kind = rest[0];
    }

    std::lock_guard lock(s.write_mu);
    const editor::EditSession saved = *s.edits;
    if (Diagnostics d = run_entry(*s.edits, entry); !d.empty()) {
      const bool boundary = d.size() == 1 && d[0].code == "AT_BOUNDARY";
      return fail(d, boundary ? 409 : 422);
    }
    entry.revision = s.revision + 1;
    entry.hash = graph_hash(*s.edits->current());
    if (!s.append_log(entry)) {
      *s.edits = saved;
      return fail(error("IO", s.id, "cannot append to the op log"), 500);
    }
    s.revision = entry.revision;
    s.publish();
    Json out = Json::object();
    out["revision"] = s.revision;
    out["cursor"] = s.edits->cursor();
    out["history"] = s.edits->revisions().size();
    out["hash"] = entry.hash;
    return ok(out);
  }
  if (method != "GET")
    return fail(error("METHOD_NOT_ALLOWED", where, method + " is not supported here"), 405);

  const auto snap = s.snapshot();
  const InstantiatedGraph& g = *snap->graph;
  const provenance::CorpusIndex& corpus = *s.corpus;

  if (rest.empty()) {
    Json out = Json::object();
    out["session_id"] = s.id;
    out["revision"] = snap->revision;
    out["summary"] = summary(g);
    return ok(out);
  }

  if (is({"graph"})) {
    layout::ExpansionState state;
    if (auto e = param("expanded")) {
      if (*e == "*")
        state = layout::expand_all(g);
      else
        for (const auto& id : split(*e, ','))
          if (!id.empty()) state.expanded.insert(id);
    }
    std::optional<std::set<std::string>> emphasis;
    if (auto ent = param("entity")) {
      auto f = editor::filter_by_entity(g, *ent);
      if (!f) return fail(f.diagnostics(), 404);
      emphasis = *f;
    }
    if (param("lo") || param("hi")) {
      auto lo = parse_number(param("lo").value_or("0"));
      auto hi = parse_number(param("hi").value_or("1"));
      if (!lo || !hi) return fail(error("BAD_QUERY", "", "lo and hi must be numbers"), 400);
      auto f = editor::filter_by_confidence(g, *lo, *hi);
      if (!f) return fail(f.diagnostics(), 400);
      if (emphasis) {
        std::set<std::string> both;
        std::set_intersection(emphasis->begin(), emphasis->end(), f->begin(), f->end(),
                              std::inserter(both, both.end()));
        emphasis = std::move(both);
      } else {
        emphasis = *f;
      }
    }
    auto l = layout::compute_layout(g, state, emphasis);
    if (!l) return fail(l.diagnostics(), 422);
    layout::Layout view = std::move(l).value();
    const bool minimap = param("view").value_or("") == "minimap";
    if (minimap) {
      auto m = layout::minimap_view(view);
      if (!m) return fail(m.diagnostics(), 422);
      view = std::move(m).value();
    }
    Json lj = layout::to_json(view);
    for (auto& node : lj["nodes"])
      if (node["kind"] == "event") node["confidence"] = g.events.at(node["id"]).confidence;
    Json gates = Json::array();
    if (auto statuses = check_gates(g))
      for (const auto& st : *statuses) gates.push_back(formats::to_json(st));
    Json out = Json::object();
    out["revision"] = snap->revision;
    out["layout"] = std::move(lj);
    out["gates"] = std::move(gates);
    return ok(out);
  }

  if (is({"events", "*"})) {
    const EventNode* ev = g.find_event(rest[1]);
    if (!ev) return fail(error("REF_MISSING", rest[1], "event does not exist"), 404);
    std::vector<Argument> rows = ev->arguments;
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Argument& a, const Argument& b) { return a.order < b.order; });
    Json args = Json::array();
    for (const auto& a : rows) {
      auto it = g.entities.find(a.filler);
      if (it == g.entities.end() || it->second.provenance.empty()) continue;
      Json row = Json::object();
      row["role"] = a.role;
      row["entity"] = a.filler;
      row["name"] = it->second.name;
      row["order"] = a.order;
      row["provenance"] = it->second.provenance;
      args.push_back(std::move(row));
    }
    Json out = Json::object();
    out["revision"] = snap->revision;
    out["id"] = ev->id;
    out["name"] = ev->name;
    out["description"] = ev->description;
    out["event_type"] = formats::to_json(ev->event_type);
    out["status"] = to_string(ev->status);
    out["confidence"] = ev->confidence;
    out["arguments"] = std::move(args);
    out["provenance"] = ev->provenance;
    return ok(out);
  }

  if (is({"entities"})) {
    Json list = Json::array();
    for (const auto& [id, count] : entity_occurrence_counts(g)) {
      const EntityNode& e = g.entities.at(id);
      Json row = Json::object();
      row["id"] = id;
      row["name"] = e.name;
      row["count"] = count;
      row["provenance"] = e.provenance;
      list.push_back(std::move(row));
    }
    Json out = Json::object();
    out["revision"] = snap->revision;
    out["entities"] = std::move(list);
    return ok(out);
  }

  if (is({"provenance", "*"})) {
    auto r = provenance::resolve(corpus, g.provenance, rest[1]);
    if (!r) {
      const bool missing = r.diagnostics().front().code == "REF_MISSING";
      return fail(r.diagnostics(), missing ? 404 : 422);
    }
    Json out = provenance::to_json(*r);
    if (auto loc = provenance::locate_source(corpus, g.provenance, rest[1]))
      out["source"] = provenance::to_json(*loc);
    return ok(out);
  }

  if (is({"provenance", "*", "context"})) {
    auto p = provenance::expand_context(corpus, g.provenance, rest[1]);
    if (!p) {
      const bool missing = p.diagnostics().front().code == "REF_MISSING";
      return fail(p.diagnostics(), missing ? 404 : 422);
    }
    return ok(provenance::to_json(*p));
  }

  if (is({"documents", "*"})) {
    const auto* doc = corpus.document(rest[1]);
    if (!doc) return fail(error("REF_MISSING", rest[1], "document does not exist"), 404);
    Json out = Json::object();
    out["doc_id"] = doc->document->doc_id;
    out["title"] = doc->document->title;
    out["text"] = doc->document->text;
    out["length"] = doc->text.length();
    Json images = Json::array();
    for (const auto& im : doc->document->images) {
      Json i = Json::object();
      i["image_id"] = im.image_id;
      i["media"] = im.media;
      i["width"] = im.width;
      i["height"] = im.height;
      images.push_back(std::move(i));
    }
    out["images"] = std::move(images);
    return ok(out);
  }

  if (is({"filter", "entity", "*"})) {
    auto f = editor::filter_by_entity(g, rest[2]);
    if (!f) return fail(f.diagnostics(), 404);
    Json out = Json::object();
    out["revision"] = snap->revision;
    out["events"] = id_array(*f);
    return ok(out);
  }

  if (is({"filter", "confidence"})) {
    auto lo = parse_number(param("lo").value_or(""));
    auto hi = parse_number(param("hi").value_or(""));
    if (!lo || !hi) return fail(error("BAD_QUERY", "", "lo and hi must be numbers"), 400);
    auto f = editor::filter_by_confidence(g, *lo, *hi);
    if (!f) return fail(f.diagnostics(), 400);
    Json out = Json::object();
    out["revision"] = snap->revision;
    out["events"] = id_array(*f);
    return ok(out);
  }

  if (is({"export"})) return {200, formats::serialize_graph(g)};

  return fail(error("NOT_FOUND", where, "no such route"), 404);
}

}  // namespace ege::service
