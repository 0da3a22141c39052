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

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "core/diagnostics.hpp"
#include "core/formats.hpp"
#include "core/model.hpp"

namespace ege::matcher {

// Deterministic stand-in for a learned matcher: exact type identity, else
// token-set Dice similarity of names. Candidates at or above `tau` are
// accepted greedily by (score desc, schema document order, instance id).
struct MatchConfig {
  double tau = 0.5;
};

Diagnostics validate_config(const MatchConfig& cfg);

enum class Decision { kMatchedByType, kMatchedByName, kPredicted, kAttached };
const char* to_string(Decision d);

struct MatchResult {
  InstantiatedGraph graph;
  // Keyed by output node id.
  std::map<std::string, Decision> decisions;
  Diagnostics diagnostics;  // warnings only
};

// Lowercased alphanumeric tokens.
std::set<std::string> name_tokens(std::string_view name);
double dice(const std::set<std::string>& a, const std::set<std::string>& b);

double score_match(const formats::SchemaEvent& s, const formats::InstanceEvent& e,
                   const MatchConfig& cfg = {});

// Id given to the gate attached to schema event `source`.
std::string gate_id_for(const std::string& source);
// Id of the provenance record synthesized from an event's trigger.
std::string trigger_provenance_id(const std::string& event_id);

// Errors: EMPTY_SCHEMA, BAD_TAU, ID_COLLISION.
Result<MatchResult> match_graphs(const formats::SchemaFile& schema,
                                 const formats::InstanceFile& instance,
                                 const MatchConfig& cfg = {});

}  // namespace ege::matcher
