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

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/editor.hpp"
#include "core/formats.hpp"
#include "core/matcher.hpp"
#include "core/model.hpp"
#include "core/provenance.hpp"

namespace ege::service {

// Lowercase hex SHA-256 of the canonical serialization.
std::string graph_hash(const InstantiatedGraph& g);

struct Response {
  int status = 200;
  std::string body;
};

// Inputs a session was created from, already parsed.
struct SessionInputs {
  formats::SchemaFile schema;
  formats::InstanceFile instance;
  formats::CorpusFile corpus;
  matcher::MatchConfig config;
};

// Result of rebuilding a persisted session from its base files and op log.
struct Replayed {
  SessionInputs inputs;
  std::shared_ptr<const provenance::CorpusIndex> corpus;
  std::unique_ptr<editor::EditSession> edits;
  std::uint64_t revision = 0;
  std::string hash;
};

// Errors: IO, SYNTAX, REPLAY_MISMATCH and whatever the stored inputs report.
Result<Replayed> replay_session(const std::filesystem::path& dir);

// Request handler for the session API. Transport-agnostic: a web server
// forwards (method, target, body) and writes back the response. Safe to call
// from many threads; writes to one session are serialized, reads use
// snapshots.
class Service {
 public:
  // With a data directory, sessions are persisted there and reloaded by load().
  explicit Service(std::optional<std::filesystem::path> data_dir = std::nullopt);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Replays every persisted session. Sessions that fail to replay are skipped
  // and reported.
  Diagnostics load();

  Response handle(const std::string& method, const std::string& target,
                  const std::string& body);

  std::vector<std::string> session_ids() const;

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id) const;

  Response create_session(const std::string& body);
  Response route_session(const std::string& method, Session& s,
                         const std::vector<std::string>& rest,
                         const std::map<std::string, std::string>& query,
                         const std::string& body);

  std::optional<std::filesystem::path> data_dir_;
  mutable std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace ege::service
