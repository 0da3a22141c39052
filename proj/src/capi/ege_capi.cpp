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

#include "ege/ege.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "core/documents.hpp"
#include "core/formats.hpp"
#include "core/layout.hpp"
#include "core/matcher.hpp"
#include "core/service.hpp"

struct ege_graph {
  ege::InstantiatedGraph graph;
};

struct ege_service {
  explicit ege_service(std::optional<std::filesystem::path> dir) : impl(std::move(dir)) {}
  ege::service::Service impl;
};

namespace {

thread_local std::string last_diagnostics = "[]";

void remember(const ege::Diagnostics& d) {
  last_diagnostics = ege::formats::to_json(d).dump();
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

ege_status internal(const std::exception& e) {
  remember({ege::error("INTERNAL", "", e.what())});
  return EGE_INTERNAL;
}

ege_status invalid(const char* what) {
  remember({ege::error("INVALID_ARGUMENT", "", what)});
  return EGE_INVALID_ARGUMENT;
}

ege_status from(const ege::Diagnostics& d) {
  remember(d);
  return ege::has_errors(d) ? EGE_DIAGNOSTICS : EGE_OK;
}

}  // namespace

extern "C" {

const char* ege_version(void) { return "1.0.0"; }

const char* ege_last_diagnostics(void) { return last_diagnostics.c_str(); }

void ege_free(char* p) { std::free(p); }

ege_status ege_validate(const char* const* texts, const size_t* lengths, size_t count,
                        char** report) {
  if ((count > 0 && (!texts || !lengths)) || !report) return invalid("null argument");
  try {
    std::vector<std::string> docs;
    for (size_t i = 0; i < count; ++i) {
      if (!texts[i]) return invalid("null document");
      docs.emplace_back(texts[i], lengths[i]);
    }
    const auto results = ege::validate_documents(docs);
    ege::formats::Json out = ege::formats::Json::array();
    ege::Diagnostics all;
    for (const auto& r : results) {
      out.push_back(ege::formats::to_json(r));
      all.insert(all.end(), r.begin(), r.end());
    }
    *report = copy_out(out.dump());
    return from(all);
  } catch (const std::exception& e) {
    return internal(e);
  }
}

ege_status ege_match(const char* schema, size_t schema_len, const char* instance,
                     size_t instance_len, double tau, char** graph_out) {
  if (!schema || !instance || !graph_out) return invalid("null argument");
  try {
    ege::Diagnostics d;
    auto s = ege::formats::parse_schema(std::string_view(schema, schema_len));
    auto i = ege::formats::parse_instance(std::string_view(instance, instance_len));
    d.insert(d.end(), s.diagnostics().begin(), s.diagnostics().end());
    d.insert(d.end(), i.diagnostics().begin(), i.diagnostics().end());
    if (!s || !i) return from(d);
    auto m = ege::matcher::match_graphs(*s, *i, ege::matcher::MatchConfig{tau});
    d.insert(d.end(), m.diagnostics().begin(), m.diagnostics().end());
    if (!m) return from(d);
    d.insert(d.end(), m->diagnostics.begin(), m->diagnostics.end());
    *graph_out = copy_out(ege::formats::serialize_graph(m->graph));
    return from(d);
  } catch (const std::exception& e) {
    return internal(e);
  }
}

ege_status ege_graph_parse(const char* text, size_t len, ege_graph** out) {
  if (!text || !out) return invalid("null argument");
  try {
    auto g = ege::formats::parse_graph(std::string_view(text, len));
    if (!g) return from(g.diagnostics());
    *out = new ege_graph{std::move(g).value()};
    return from(g.diagnostics());
  } catch (const std::exception& e) {
    return internal(e);
  }
}

void ege_graph_free(ege_graph* g) { delete g; }

ege_status ege_graph_serialize(const ege_graph* g, char** out) {
  if (!g || !out) return invalid("null argument");
  try {
    *out = copy_out(ege::formats::serialize_graph(g->graph));
    return from({});
  } catch (const std::exception& e) {
    return internal(e);
  }
}

ege_status ege_graph_layout(const ege_graph* g, const char* expanded, int expand_all,
                            int minimap, char** out) {
  if (!g || !out) return invalid("null argument");
  try {
    ege::layout::ExpansionState state;
    if (expand_all) {
      state = ege::layout::expand_all(g->graph);
    } else if (expanded) {
      std::string list(expanded);
      std::size_t start = 0;
      while (start <= list.size()) {
        std::size_t comma = list.find(',', start);
        if (comma == std::string::npos) comma = list.size();
        if (comma > start) state.expanded.insert(list.substr(start, comma - start));
        start = comma + 1;
      }
    }
    auto l = ege::layout::compute_layout(g->graph, state);
    if (!l) return from(l.diagnostics());
    ege::layout::Layout view = std::move(l).value();
    if (minimap) {
      auto m = ege::layout::minimap_view(view);
      if (!m) return from(m.diagnostics());
      view = std::move(m).value();
    }
    *out = copy_out(ege::formats::dump(ege::layout::to_json(view)));
    return from({});
  } catch (const std::exception& e) {
    return internal(e);
  }
}

ege_status ege_service_open(const char* data_dir, ege_service** out) {
  if (!out) return invalid("null argument");
  try {
    std::optional<std::filesystem::path> dir;
    if (data_dir && *data_dir) {
      dir = std::filesystem::path(data_dir);
      std::error_code ec;
      std::filesystem::create_directories(*dir, ec);
      if (ec) {
        remember({ege::error("IO", data_dir, ec.message())});
        return EGE_IO;
      }
    }
    auto* s = new ege_service(dir);
    remember(s->impl.load());
    *out = s;
    return EGE_OK;
  } catch (const std::exception& e) {
    return internal(e);
  }
}

void ege_service_close(ege_service* s) { delete s; }

ege_status ege_service_handle(ege_service* s, const char* method, const char* target,
                              const char* body, size_t body_len, int* http_status,
                              char** response) {
  if (!s || !method || !target || !http_status || !response) return invalid("null argument");
  try {
    auto r = s->impl.handle(method, target, body ? std::string(body, body_len) : std::string());
    *http_status = r.status;
    *response = copy_out(r.body);
    return from({});
  } catch (const std::exception& e) {
    return internal(e);
  }
}

ege_status ege_session_export(const char* session_dir, char** graph_out, char** hash_out,
                              unsigned long long* revision_out) {
  if (!session_dir) return invalid("null argument");
  try {
    auto r = ege::service::replay_session(session_dir);
    if (!r) {
      remember(r.diagnostics());
      for (const auto& d : r.diagnostics())
        if (d.code == "IO") return EGE_IO;
      return EGE_DIAGNOSTICS;
    }
    if (graph_out) *graph_out = copy_out(ege::formats::serialize_graph(*r->edits->current()));
    if (hash_out) *hash_out = copy_out(r->hash);
    if (revision_out) *revision_out = r->revision;
    return from({});
  } catch (const std::exception& e) {
    return internal(e);
  }
}

}  // extern "C"
