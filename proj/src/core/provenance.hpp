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

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/formats.hpp"
#include "core/model.hpp"
#include "core/utf8.hpp"

namespace ege::provenance {

// Read-only lookup over a corpus: documents by id with scalar-indexed text,
// images by id with their owning document.
class CorpusIndex {
 public:
  struct DocumentEntry {
    const formats::Document* document;
    Utf8Text text;
  };
  struct ImageEntry {
    const formats::ImageRecord* image;
    const formats::Document* owner;
  };

  explicit CorpusIndex(formats::CorpusFile corpus);
  CorpusIndex(const CorpusIndex&) = delete;
  CorpusIndex& operator=(const CorpusIndex&) = delete;

  const formats::CorpusFile& corpus() const { return corpus_; }
  const DocumentEntry* document(const std::string& doc_id) const;
  const ImageEntry* image(const std::string& image_id) const;

 private:
  formats::CorpusFile corpus_;
  std::map<std::string, DocumentEntry> documents_;
  std::map<std::string, ImageEntry> images_;
};

using Records = std::map<std::string, Provenance>;

// OFFSET_ORDER, OFFSET_RANGE or REF_MISSING for a proposed span.
Diagnostics check_span(const CorpusIndex& corpus, const std::string& subject,
                       const std::string& doc_id, std::int64_t start, std::int64_t end);
// INVALID_BBOX or REF_MISSING for a proposed box.
Diagnostics check_bbox(const CorpusIndex& corpus, const std::string& subject,
                       const std::string& image_id, const BoundingBox& bbox);
// Span/box checks plus STALE_SPAN when cached text differs from the slice.
Diagnostics check_record(const CorpusIndex& corpus, const Provenance& record);
Diagnostics check_records(const CorpusIndex& corpus, const Records& records);
Diagnostics check_instance(const CorpusIndex& corpus, const formats::InstanceFile& inst);

struct ResolvedText {
  std::string id;
  std::string doc_id;
  std::string title;
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::string text;
};

struct ResolvedImage {
  std::string id;
  std::string image_id;
  std::string media;
  std::int64_t width = 0;
  std::int64_t height = 0;
  std::string doc_id;
  std::string title;
  BoundingBox bbox;
};

using Resolved = std::variant<ResolvedText, ResolvedImage>;

// Errors: REF_MISSING, STALE_SPAN.
Result<Resolved> resolve(const CorpusIndex& corpus, const Records& records,
                         const std::string& id);

struct Paragraph {
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::string text;
};

// Paragraphs are maximal runs separated by two or more consecutive newlines.
std::vector<std::pair<std::size_t, std::size_t>> paragraph_bounds(const Utf8Text& text);

// Errors: REF_MISSING, NOT_TEXT.
Result<Paragraph> expand_context(const CorpusIndex& corpus, const Records& records,
                                 const std::string& id);

struct SourceLocation {
  bool is_text = true;
  std::string doc_id;
  std::string image_id;
  std::string title;
  std::int64_t start = 0;
  std::int64_t end = 0;
  BoundingBox bbox;
};

// Errors: REF_MISSING.
Result<SourceLocation> locate_source(const CorpusIndex& corpus, const Records& records,
                                     const std::string& id);

formats::Json to_json(const Resolved& r);
formats::Json to_json(const Paragraph& p);
formats::Json to_json(const SourceLocation& s);

}  // namespace ege::provenance
