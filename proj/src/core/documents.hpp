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

#include <string>
#include <vector>

#include "core/diagnostics.hpp"

namespace ege {

// Parses and checks a set of documents together. A corpus among them is used
// to check the spans and boxes of the other documents. One diagnostics list
// per input, in input order.
std::vector<Diagnostics> validate_documents(const std::vector<std::string>& texts);

}  // namespace ege
