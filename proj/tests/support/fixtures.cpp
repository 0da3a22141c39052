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

#include "support/fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ege::testing {

std::string fixture_path(const std::string& name) {
  return std::string(EGE_FIXTURE_DIR) + "/" + name;
}

std::string golden_path(const std::string& name) {
  return std::string(EGE_GOLDEN_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_fixture(const std::string& name) { return read_file(fixture_path(name)); }

std::string describe(const Diagnostics& d) {
  std::string out;
  for (const auto& x : d)
    out += std::string(to_string(x.severity)) + " " + x.code + " [" + x.subject + "] " +
           x.message + "\n";
  return out;
}

bool has_code(const Diagnostics& d, const std::string& code) {
  return std::any_of(d.begin(), d.end(), [&](const Diagnostic& x) { return x.code == code; });
}

namespace {

template <class T>
T unwrap(Result<T> r, const std::string& what) {
  if (!r) throw std::runtime_error(what + ":\n" + describe(r.diagnostics()));
  return std::move(r).value();
}

}  // namespace

formats::SchemaFile load_schema(const std::string& name) {
  return unwrap(formats::parse_schema(read_fixture(name)), name);
}

formats::InstanceFile load_instance(const std::string& name) {
  return unwrap(formats::parse_instance(read_fixture(name)), name);
}

formats::CorpusFile load_corpus(const std::string& name) {
  return unwrap(formats::parse_corpus(read_fixture(name)), name);
}

InstantiatedGraph load_graph_file(const std::string& path) {
  return unwrap(formats::parse_graph(read_file(path)), path);
}

std::vector<std::string> all_fixture_files() {
  std::vector<std::string> out;
  for (const char* dir : {EGE_FIXTURE_DIR, EGE_GOLDEN_DIR})
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      // Layout goldens are renderer output, not one of the document formats.
      if (entry.path().extension() == ".json" &&
          entry.path().filename().string().find("_layout") == std::string::npos)
        out.push_back(entry.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ege::testing
