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

#include "core/diagnostics.hpp"

#include <algorithm>
#include <tuple>

namespace ege {

const char* to_string(Severity s) {
  return s == Severity::kError ? "error" : "warning";
}

Diagnostic error(std::string code, std::string subject, std::string message,
                 std::string path) {
  return {std::move(code), Severity::kError, std::move(subject),
          std::move(message), std::move(path)};
}

Diagnostic warning(std::string code, std::string subject, std::string message,
                   std::string path) {
  return {std::move(code), Severity::kWarning, std::move(subject),
          std::move(message), std::move(path)};
}

void sort_diagnostics(Diagnostics& diags) {
  std::stable_sort(diags.begin(), diags.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.severity, a.subject, a.code, a.path,
                                     a.message) <
                            std::tie(b.severity, b.subject, b.code, b.path,
                                     b.message);
                   });
}

bool has_errors(const Diagnostics& diags) { return error_count(diags) > 0; }

std::size_t error_count(const Diagnostics& diags) {
  return static_cast<std::size_t>(
      std::count_if(diags.begin(), diags.end(), [](const Diagnostic& d) {
        return d.severity == Severity::kError;
      }));
}

}  // namespace ege
