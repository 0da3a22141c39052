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

// Command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
// Bodies are JSON whatever the client labels them; curl's default form type
// would otherwise cap session uploads at 8 KiB.
#define CPPHTTPLIB_FORM_URL_ENCODED_PAYLOAD_MAX_LENGTH (std::size_t{1} << 30)
#include <httplib.h>
#include <json.hpp>

#include "ege/ege.h"

namespace {

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kEnvironment = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout.flush());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out.flush());
}

// Takes ownership of a string allocated by the library.
std::string take(char* p) {
  std::string s = p ? p : "";
  ege_free(p);
  return s;
}

void print_diagnostics(const std::string& prefix, const nlohmann::json& list) {
  for (const auto& d : list) {
    std::cerr << prefix << d.value("severity", "error") << " " << d.value("code", "")
              << " [" << d.value("subject", "") << "] " << d.value("message", "");
    if (d.contains("path")) std::cerr << " (at " << d["path"].get<std::string>() << ")";
    std::cerr << "\n";
  }
}

void print_last(const std::string& prefix) {
  print_diagnostics(prefix, nlohmann::json::parse(ege_last_diagnostics()));
}

int exit_for(ege_status st) {
  switch (st) {
    case EGE_OK: return kOk;
    case EGE_DIAGNOSTICS: return kDiagnostics;
    default: return kEnvironment;
  }
}

int cmd_validate(const std::vector<std::string>& paths) {
  std::vector<std::string> docs;
  for (const auto& p : paths) {
    auto text = read_file(p);
    if (!text) {
      std::cerr << p << ": cannot read file\n";
      return kEnvironment;
    }
    docs.push_back(std::move(*text));
  }
  std::vector<const char*> ptrs;
  std::vector<size_t> lens;
  for (const auto& d : docs) {
    ptrs.push_back(d.data());
    lens.push_back(d.size());
  }
  char* report = nullptr;
  const ege_status st = ege_validate(ptrs.data(), lens.data(), docs.size(), &report);
  if (st != EGE_OK && st != EGE_DIAGNOSTICS) {
    print_last("");
    return kEnvironment;
  }
  const auto results = nlohmann::json::parse(take(report));
  for (std::size_t i = 0; i < results.size(); ++i)
    print_diagnostics(paths[i] + ": ", results[i]);
  return exit_for(st);
}

int cmd_match(const std::string& schema_path, const std::string& instance_path,
              const std::string& out_path, double tau) {
  auto schema = read_file(schema_path);
  auto instance = read_file(instance_path);
  if (!schema || !instance) {
    std::cerr << (schema ? instance_path : schema_path) << ": cannot read file\n";
    return kEnvironment;
  }
  char* graph = nullptr;
  const ege_status st =
      ege_match(schema->data(), schema->size(), instance->data(), instance->size(), tau, &graph);
  print_last("");
  if (st != EGE_OK) return exit_for(st);
  if (!write_file(out_path, take(graph))) {
    std::cerr << out_path << ": cannot write file\n";
    return kEnvironment;
  }
  return kOk;
}

int cmd_layout(const std::string& graph_path, const std::string& expand, bool expand_all,
               bool minimap, const std::string& out_path) {
  auto text = read_file(graph_path);
  if (!text) {
    std::cerr << graph_path << ": cannot read file\n";
    return kEnvironment;
  }
  ege_graph* g = nullptr;
  ege_status st = ege_graph_parse(text->data(), text->size(), &g);
  if (st != EGE_OK) {
    print_last(graph_path + ": ");
    return exit_for(st);
  }
  char* out = nullptr;
  st = ege_graph_layout(g, expand.empty() ? nullptr : expand.c_str(), expand_all ? 1 : 0,
                        minimap ? 1 : 0, &out);
  ege_graph_free(g);
  if (st != EGE_OK) {
    print_last(graph_path + ": ");
    return exit_for(st);
  }
  if (!write_file(out_path, take(out))) {
    std::cerr << out_path << ": cannot write file\n";
    return kEnvironment;
  }
  return kOk;
}

int cmd_serve(const std::string& host, int port, const std::string& data_dir) {
  ege_service* svc = nullptr;
  const ege_status st = ege_service_open(data_dir.empty() ? nullptr : data_dir.c_str(), &svc);
  print_last("load: ");
  if (st != EGE_OK) return exit_for(st);

  httplib::Server server;
  auto forward = [svc](const httplib::Request& req, httplib::Response& res) {
    int status = 500;
    char* body = nullptr;
    const ege_status hs = ege_service_handle(svc, req.method.c_str(), req.target.c_str(),
                                             req.body.data(), req.body.size(), &status, &body);
    if (hs != EGE_OK) {
      res.status = 500;
      res.set_content(ege_last_diagnostics(), "application/json");
      return;
    }
    res.status = status;
    res.set_content(take(body), "application/json");
  };
  server.Get(R"(/sessions(/.*)?)", forward);
  server.Post(R"(/sessions(/.*)?)", forward);

  if (!server.bind_to_port(host, port)) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    ege_service_close(svc);
    return kEnvironment;
  }
  std::cerr << "listening on http://" << host << ":" << port;
  if (!data_dir.empty()) std::cerr << " (data in " << data_dir << ")";
  std::cerr << "\n";
  const bool clean = server.listen_after_bind();
  ege_service_close(svc);
  return clean ? kOk : kEnvironment;
}

int cmd_export(const std::string& session_dir, const std::string& out_path) {
  char* graph = nullptr;
  char* hash = nullptr;
  unsigned long long revision = 0;
  const ege_status st = ege_session_export(session_dir.c_str(), &graph, &hash, &revision);
  if (st != EGE_OK) {
    print_last(session_dir + ": ");
    return exit_for(st);
  }
  const std::string h = take(hash);
  if (!write_file(out_path, take(graph))) {
    std::cerr << out_path << ": cannot write file\n";
    return kEnvironment;
  }
  std::cerr << "revision " << revision << " sha256 " << h << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schema-guided event graph engine"};
  app.require_subcommand(1);

  std::vector<std::string> validate_paths;
  auto* validate = app.add_subcommand("validate", "Parse and check documents");
  validate->add_option("paths", validate_paths, "Schema, instance, corpus or graph files")
      ->required();

  std::string schema, instance, out = "-";
  double tau = 0.5;
  const CLI::Validator tau_range(
      [](std::string& s) -> std::string {
        double v = 0;
        try {
          v = std::stod(s);
        } catch (...) {
          return "tau must be a number";
        }
        return v > 0.0 && v <= 1.0 ? "" : "tau must lie in (0, 1]";
      },
      "(0, 1]");
  auto* match = app.add_subcommand("match", "Instantiate a schema against an instance graph");
  match->add_option("schema", schema, "Schema file")->required();
  match->add_option("instance", instance, "Instance file")->required();
  match->add_option("out", out, "Output path, - for stdout")->required();
  match->add_option("--tau", tau, "Match threshold")->check(tau_range);

  std::string graph, expand, layout_out = "-";
  bool expand_all = false, minimap = false;
  auto* layout = app.add_subcommand("layout", "Lay out an instantiated graph as JSON");
  layout->add_option("graph", graph, "Instantiated graph file")->required();
  layout->add_option("--expand", expand, "Comma-separated parents to expand");
  layout->add_flag("--expand-all", expand_all, "Expand every parent");
  layout->add_flag("--minimap", minimap, "Map coordinates into the unit square");
  layout->add_option("--out", layout_out, "Output path, - for stdout");

  std::string host = "127.0.0.1", data_dir;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve the session API over HTTP");
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--port", port, "Port to bind")->check(CLI::Range(1, 65535));
  serve->add_option("--data-dir", data_dir, "Session storage directory")->envname("EGE_DATA_DIR");

  std::string session_dir, export_out;
  auto* exp = app.add_subcommand("export", "Replay a stored session and write its graph");
  exp->add_option("session", session_dir, "Session directory")->required();
  exp->add_option("out", export_out, "Output path, - for stdout")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kEnvironment;
  }

  if (*validate) return cmd_validate(validate_paths);
  if (*match) return cmd_match(schema, instance, out, tau);
  if (*layout) return cmd_layout(graph, expand, expand_all, minimap, layout_out);
  if (*serve) return cmd_serve(host, port, data_dir);
  if (*exp) return cmd_export(session_dir, export_out);
  return kEnvironment;
}
