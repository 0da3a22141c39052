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

#include <doctest.h>

#include "core/utf8.hpp"
#include "support/oracles.hpp"

using namespace ege;

TEST_CASE("offsets count scalar values, not bytes") {
  const std::string s = "caf\xC3\xA9 \xE2\x80\x99x \xF0\x9F\x98\x80!";
  Utf8Text t(s);
  CHECK(t.valid());
  CHECK(t.length() == 10);
  CHECK(t.length() == testing::decode_utf8(s).size());
  CHECK(t.slice(0, 4) == "caf\xC3\xA9");
  CHECK(t.slice(5, 6) == "\xE2\x80\x99");
  CHECK(t.slice(8, 9) == "\xF0\x9F\x98\x80");
  CHECK(t.at(3) == U'é');
  CHECK(t.at(8) == U'\U0001F600');
  CHECK(utf8_length(s) == 10);
}

TEST_CASE("malformed bytes count one each and flag the text") {
  Utf8Text t(std::string("a\xFF" "b\xC3", 4));
  CHECK_FALSE(t.valid());
  CHECK(t.length() == 4);
  CHECK(t.at(1) == U'�');
  CHECK(t.slice(2, 3) == "b");
}

TEST_CASE("empty text has length zero") {
  Utf8Text t("");
  CHECK(t.length() == 0);
  CHECK(t.slice(0, 0).empty());
}
