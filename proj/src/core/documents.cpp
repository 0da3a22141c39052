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

#include "core/documents.hpp"

#include <memory>
#include <optional>

#include "core/formats.hpp"
#include "core/matcher.hpp"
#include "core/provenance.hpp"

namespace ege {

namespace {

void append(Diagnostics& to, const Diagnostics& from) { to.insert(to.end(), from.begin(), from.end()); }

}  // namespace

std::vector<Diagnostics> validate_documents(const std::vector<std::string>& texts) {
  std::vector<formats::DocumentKind> kinds;
  std::unique_ptr<provenance::CorpusIndex> corpus;
  std::vector<Diagnostics> out(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    kinds.push_back(formats::detect_kind(texts[i]));
    if (kinds.back() != formats::DocumentKind::kCorpus) continue;
    auto c = formats::parse_corpus(texts[i]);
    append(out[i], c.diagnostics());
    if (c && !corpus) corpus = std::make_unique<provenance::CorpusIndex>(std::move(c).value());
  }

  for (std::size_t i = 0; i < texts.size(); ++i) {
    Diagnostics& d = out[i];
    switch (kinds[i]) {
      case formats::DocumentKind::kCorpus:
        break;
      case formats::DocumentKind::kSchema: {
        auto s = formats::parse_schema(texts[i]);
        append(d, s.diagnostics());
        if (!s) break;
        // Instantiating against nothing yields the schema as a predicted
        // graph, which carries every structural invariant.
        auto m = matcher::match_graphs(*s, formats::InstanceFile{});
        if (!m) {
          append(d, m.diagnostics());
          break;
        }
        append(d, validate_graph(m->graph));
        break;
      }
      case formats::DocumentKind::kInstance: {
        auto inst = formats::parse_instance(texts[i]);
        append(d, inst.diagnostics());
        if (!inst) break;
        append(d, validate_graph(formats::instance_as_graph(*inst)));
        if (corpus) append(d, provenance::check_instance(*corpus, *inst));
        break;
      }
      case formats::DocumentKind::kGraph: {
        auto g = formats::parse_graph(texts[i]);
        append(d, g.diagnostics());
        if (!g) break;
        append(d, validate_graph(*g));
        if (corpus) append(d, provenance::check_records(*corpus, g->provenance));
        break;
      }
      case formats::DocumentKind::kUnknown: {
        Diagnostics syntax;
        if (formats::parse_json(texts[i], syntax))
          d.push_back(error("UNKNOWN_KIND", "",
                            "not a schema, instance, corpus or instantiated graph"));
        append(d, syntax);
        break;
      }
    }
    sort_diagnostics(d);
  }
  return out;
}

}  // namespace ege
