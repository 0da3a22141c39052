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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ege {

// UTF-8 text addressed by Unicode scalar-value index. Offsets used throughout
// provenance records count scalar values, not bytes.
class Utf8Text {
 public:
  Utf8Text() : starts_{0} {}
  // Malformed sequences are counted as one scalar per offending byte so that
  // indexing stays total; `valid()` reports whether that happened.
  explicit Utf8Text(std::string text);

  std::size_t length() const { return starts_.size() - 1; }
  const std::string& bytes() const { return text_; }
  bool valid() const { return valid_; }

  // Slice [start, end) in scalar values. Caller guarantees start <= end <= length().
  std::string_view slice(std::size_t start, std::size_t end) const;
  // Scalar value at index i (U+FFFD for malformed bytes).
  char32_t at(std::size_t i) const;

 private:
  std::string text_;
  std::vector<std::size_t> starts_;  // byte offset of each scalar, plus end
  bool valid_ = true;
};

std::size_t utf8_length(std::string_view text);

}  // namespace ege
