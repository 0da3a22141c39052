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

#include "core/formats.hpp"
#include "core/model.hpp"

namespace ege::testing {

std::string fixture_path(const std::string& name);
std::string golden_path(const std::string& name);

// Whole file as bytes; throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);
std::string read_fixture(const std::string& name);

// Parse a fixture, throwing with the diagnostics when it fails.
formats::SchemaFile load_schema(const std::string& name);
formats::InstanceFile load_instance(const std::string& name);
formats::CorpusFile load_corpus(const std::string& name);
InstantiatedGraph load_graph_file(const std::string& path);

// Every document-format *.json file under the fixture and golden directories.
std::vector<std::string> all_fixture_files();

std::string describe(const Diagnostics& d);
bool has_code(const Diagnostics& d, const std::string& code);

}  // namespace ege::testing
