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

#ifndef EGE_EGE_H_
#define EGE_EGE_H_

#include <stddef.h>

#if defined(_WIN32)
#define EGE_API __declspec(dllexport)
#else
#define EGE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ege_status {
  EGE_OK = 0,
  EGE_DIAGNOSTICS = 1,      /* domain problems; see ege_last_diagnostics() */
  EGE_IO = 2,               /* file system or environment failure */
  EGE_INVALID_ARGUMENT = 3, /* null pointer or out-of-range parameter */
  EGE_INTERNAL = 4
} ege_status;

typedef struct ege_graph ege_graph;
typedef struct ege_service ege_service;

EGE_API const char* ege_version(void);

/* JSON array of the diagnostics reported by the last call on this thread.
   Valid until the next call on the same thread. */
EGE_API const char* ege_last_diagnostics(void);

/* Releases strings returned through char** out-parameters. */
EGE_API void ege_free(char* p);

/* Validates documents together (a corpus among them checks the others'
   provenance). *report receives a JSON array with one diagnostics array per
   input. Returns EGE_DIAGNOSTICS when any error was found. */
EGE_API ege_status ege_validate(const char* const* texts, const size_t* lengths, size_t count,
                                char** report);

/* Instantiates a schema against an instance graph. *graph_out receives the
   canonical text of the instantiated graph; warnings are left in
   ege_last_diagnostics(). */
EGE_API ege_status ege_match(const char* schema, size_t schema_len, const char* instance,
                             size_t instance_len, double tau, char** graph_out);

EGE_API ege_status ege_graph_parse(const char* text, size_t len, ege_graph** out);
EGE_API void ege_graph_free(ege_graph* g);
EGE_API ege_status ege_graph_serialize(const ege_graph* g, char** out);

/* Layout as JSON. `expanded` is a comma-separated list of parent ids, or
   NULL; expand_all overrides it. With minimap != 0 coordinates are mapped
   into the unit square. */
EGE_API ege_status ege_graph_layout(const ege_graph* g, const char* expanded, int expand_all,
                                    int minimap, char** out);

/* data_dir may be NULL for an in-memory service. Persisted sessions are
   replayed on open; those that fail are skipped and reported through
   ege_last_diagnostics() while the call still returns EGE_OK. */
EGE_API ege_status ege_service_open(const char* data_dir, ege_service** out);
EGE_API void ege_service_close(ege_service* s);

/* Thread-safe. *response receives the body; *http_status the status code. */
EGE_API ege_status ege_service_handle(ege_service* s, const char* method, const char* target,
                                      const char* body, size_t body_len, int* http_status,
                                      char** response);

/* Replays a persisted session directory. Either out pointer may be NULL. */
EGE_API ege_status ege_session_export(const char* session_dir, char** graph_out,
                                      char** hash_out, unsigned long long* revision_out);

#ifdef __cplusplus
}
#endif

#endif  // EGE_EGE_H_
