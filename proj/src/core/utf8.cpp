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

#include "core/utf8.hpp"

namespace ege {
namespace {

// Returns the byte width of a well-formed sequence starting at `pos`, or 0.
std::size_t sequence_width(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  std::size_t width = 0;
  char32_t min = 0;
  if (b0 < 0x80) return 1;
  if ((b0 & 0xE0) == 0xC0) {
    width = 2;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    width = 3;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    width = 4;
    min = 0x10000;
  } else {
    return 0;
  }
  if (pos + width > s.size()) return 0;
  char32_t cp = b0 & (0x7F >> width);
  for (std::size_t k = 1; k < width; ++k) {
    const auto b = static_cast<unsigned char>(s[pos + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return width;
}

}  // namespace

Utf8Text::Utf8Text(std::string text) : text_(std::move(text)) {
  starts_.reserve(text_.size() + 1);
  std::size_t pos = 0;
  while (pos < text_.size()) {
    starts_.push_back(pos);
    std::size_t w = sequence_width(text_, pos);
    if (w == 0) {
      valid_ = false;
      w = 1;
    }
    pos += w;
  }
  starts_.push_back(text_.size());
}

std::string_view Utf8Text::slice(std::size_t start, std::size_t end) const {
  return std::string_view(text_).substr(starts_[start],
                                        starts_[end] - starts_[start]);
}

char32_t Utf8Text::at(std::size_t i) const {
  const std::size_t pos = starts_[i];
  const std::size_t w = starts_[i + 1] - pos;
  const auto b0 = static_cast<unsigned char>(text_[pos]);
  if (w == 1) return b0 < 0x80 ? b0 : 0xFFFD;
  char32_t cp = b0 & (0x7F >> w);
  for (std::size_t k = 1; k < w; ++k)
    cp = (cp << 6) | (static_cast<unsigned char>(text_[pos + k]) & 0x3F);
  return cp;
}

std::size_t utf8_length(std::string_view text) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t w = sequence_width(text, pos);
    pos += w == 0 ? 1 : w;
    ++n;
  }
  return n;
}

}  // namespace ege
