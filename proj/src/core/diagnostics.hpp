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
#include <string>
#include <utility>
#include <vector>

namespace ege {

enum class Severity { kError, kWarning };

const char* to_string(Severity s);

// A reported problem. Problems are values: operations return them instead of
// throwing so the editor can display them.
struct Diagnostic {
  std::string code;
  Severity severity = Severity::kError;
  std::string subject;  // id of the offending element, may be empty
  std::string message;
  std::string path;  // field path or "line:col" for parse problems

  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

Diagnostic error(std::string code, std::string subject, std::string message,
                 std::string path = {});
Diagnostic warning(std::string code, std::string subject, std::string message,
                   std::string path = {});

// Orders by (severity, subject, code, path, message). Errors first.
void sort_diagnostics(Diagnostics& diags);

bool has_errors(const Diagnostics& diags);
std::size_t error_count(const Diagnostics& diags);

// Value-or-diagnostics carrier. A successful result may still carry warnings.
template <class T>
class Result {
 public:
  Result(T value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Result(Diagnostics diags) : diags_(std::move(diags)) {}  // NOLINT
  Result(Diagnostic diag) : diags_{std::move(diag)} {}  // NOLINT
  Result(T value, Diagnostics warnings)
      : value_(std::move(value)), diags_(std::move(warnings)) {}

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }

  T& value() & { return *value_; }
  const T& value() const& { return *value_; }
  T&& value() && { return std::move(*value_); }
  T* operator->() { return &*value_; }
  const T* operator->() const { return &*value_; }
  T& operator*() & { return *value_; }
  const T& operator*() const& { return *value_; }

  const Diagnostics& diagnostics() const { return diags_; }
  Diagnostics& diagnostics() { return diags_; }

 private:
  std::optional<T> value_;
  Diagnostics diags_;
};

}  // namespace ege
