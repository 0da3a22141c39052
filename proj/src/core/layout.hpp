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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/formats.hpp"
#include "core/model.hpp"

namespace ege::layout {

inline constexpr double kRowHeight = 120.0;  // V: one hierarchy level
inline constexpr double kSlotWidth = 160.0;  // H: one leaf slot

enum class Shape { kCircle, kDiamond, kGateAnd, kGateOr, kGateXor };
enum class EdgeKind { kHierarchy, kTemporal, kGate };

const char* to_string(Shape s);
const char* to_string(EdgeKind k);

// Parent events whose children are currently rendered.
struct ExpansionState {
  std::set<std::string> expanded;
  bool operator==(const ExpansionState&) const = default;
};

struct LayoutNode {
  std::string id;
  bool is_gate = false;
  double x = 0;
  double y = 0;
  Shape shape = Shape::kCircle;
  std::optional<EventStatus> status;  // events only
  bool dimmed = false;
  bool operator==(const LayoutNode&) const = default;
};

struct LayoutEdge {
  std::string from;
  std::string to;
  EdgeKind kind = EdgeKind::kHierarchy;
  bool operator==(const LayoutEdge&) const = default;
};

struct Bounds {
  double min_x = 0;
  double min_y = 0;
  double max_x = 0;
  double max_y = 0;
  bool operator==(const Bounds&) const = default;
};

struct Layout {
  std::vector<LayoutNode> nodes;
  std::vector<LayoutEdge> edges;
  Bounds bounds;

  const LayoutNode* find(const std::string& id) const;
  bool operator==(const Layout&) const = default;
};

// Errors: TEMPORAL_CYCLE when a rendered sibling group cannot be ordered.
// Ids in `state` that are not parents are ignored.
Result<Layout> compute_layout(const InstantiatedGraph& g, const ExpansionState& state,
                              const std::optional<std::set<std::string>>& emphasis = std::nullopt);

// Every parent expanded.
ExpansionState expand_all(const InstantiatedGraph& g);

// Errors: NOT_A_PARENT.
Result<ExpansionState> toggle_expansion(const InstantiatedGraph& g, const ExpansionState& state,
                                        const std::string& parent);

// Affine map into the unit square, aspect ratio preserved. A layout with zero
// extent maps every node to (0.5, 0.5). Errors: EMPTY_LAYOUT.
Result<Layout> minimap_view(const Layout& l);

formats::Json to_json(const Layout& l);

}  // namespace ege::layout
