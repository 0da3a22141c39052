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

#include "core/provenance.hpp"

#include <algorithm>

namespace ege::provenance {

CorpusIndex::CorpusIndex(formats::CorpusFile corpus) : corpus_(std::move(corpus)) {
  for (const auto& doc : corpus_.documents) {
    documents_.emplace(doc.doc_id, DocumentEntry{&doc, Utf8Text(doc.text)});
    for (const auto& im : doc.images) images_.emplace(im.image_id, ImageEntry{&im, &doc});
  }
}

const CorpusIndex::DocumentEntry* CorpusIndex::document(const std::string& doc_id) const {
  auto it = documents_.find(doc_id);
  return it == documents_.end() ? nullptr : &it->second;
}

const CorpusIndex::ImageEntry* CorpusIndex::image(const std::string& image_id) const {
  auto it = images_.find(image_id);
  return it == images_.end() ? nullptr : &it->second;
}

Diagnostics check_span(const CorpusIndex& corpus, const std::string& subject,
                       const std::string& doc_id, std::int64_t start, std::int64_t end) {
  if (start < 0 || start >= end)
    return {error("OFFSET_ORDER", subject,
                  "span [" + std::to_string(start) + ", " + std::to_string(end) +
                      ") violates 0 <= start < end")};
  const auto* doc = corpus.document(doc_id);
  if (!doc) return {error("REF_MISSING", subject, "document '" + doc_id + "' is not in the corpus")};
  const auto len = static_cast<std::int64_t>(doc->text.length());
  if (end > len)
    return {error("OFFSET_RANGE", subject,
                  "span end " + std::to_string(end) + " exceeds document length " +
                      std::to_string(len))};
  return {};
}

Diagnostics check_bbox(const CorpusIndex& corpus, const std::string& subject,
                       const std::string& image_id, const BoundingBox& b) {
  if (b.w <= 0 || b.h <= 0 || b.x < 0 || b.y < 0)
    return {error("INVALID_BBOX", subject, "bounding box needs x, y >= 0 and w, h > 0")};
  const auto* im = corpus.image(image_id);
  if (!im) return {error("REF_MISSING", subject, "image '" + image_id + "' is not in the corpus")};
  if (b.x + b.w > im->image->width || b.y + b.h > im->image->height)
    return {error("INVALID_BBOX", subject,
                  "bounding box exceeds image '" + image_id + "' (" +
                      std::to_string(im->image->width) + "x" +
                      std::to_string(im->image->height) + ")")};
  return {};
}

Diagnostics check_record(const CorpusIndex& corpus, const Provenance& record) {
  if (const auto* t = std::get_if<TextProvenance>(&record)) {
    Diagnostics d = check_span(corpus, t->id, t->doc_id, t->start, t->end);
    if (!d.empty()) return d;
    const auto* doc = corpus.document(t->doc_id);
    if (doc->text.slice(static_cast<std::size_t>(t->start), static_cast<std::size_t>(t->end)) !=
        t->text)
      d.push_back(error("STALE_SPAN", t->id, "cached text differs from the document slice"));
    return d;
  }
  const auto& im = std::get<ImageProvenance>(record);
  return check_bbox(corpus, im.id, im.image_id, im.bbox);
}

Diagnostics check_records(const CorpusIndex& corpus, const Records& records) {
  Diagnostics d;
  for (const auto& [_, rec] : records) {
    auto r = check_record(corpus, rec);
    d.insert(d.end(), r.begin(), r.end());
  }
  sort_diagnostics(d);
  return d;
}

Diagnostics check_instance(const CorpusIndex& corpus, const formats::InstanceFile& inst) {
  Diagnostics d;
  for (const auto& p : inst.provenance) {
    auto r = check_record(corpus, p.record);
    d.insert(d.end(), r.begin(), r.end());
  }
  for (const auto& e : inst.events) {
    if (!e.trigger) continue;
    auto r = check_record(corpus, TextProvenance{e.id, e.trigger->doc_id, e.trigger->start,
                                                 e.trigger->end, e.trigger->text});
    d.insert(d.end(), r.begin(), r.end());
  }
  sort_diagnostics(d);
  return d;
}

namespace {

const Provenance* find(const Records& records, const std::string& id) {
  auto it = records.find(id);
  return it == records.end() ? nullptr : &it->second;
}

Diagnostic missing(const std::string& id) {
  return error("REF_MISSING", id, "provenance '" + id + "' does not exist");
}

}  // namespace

Result<Resolved> resolve(const CorpusIndex& corpus, const Records& records,
                         const std::string& id) {
  const Provenance* rec = find(records, id);
  if (!rec) return missing(id);
  Diagnostics d = check_record(corpus, *rec);
  if (!d.empty()) return d;
  if (const auto* t = std::get_if<TextProvenance>(rec)) {
    const auto* doc = corpus.document(t->doc_id);
    return Resolved{ResolvedText{t->id, t->doc_id, doc->document->title, t->start, t->end,
                                 t->text}};
  }
  const auto& im = std::get<ImageProvenance>(*rec);
  const auto* entry = corpus.image(im.image_id);
  return Resolved{ResolvedImage{im.id, im.image_id, entry->image->media, entry->image->width,
                                entry->image->height, entry->owner->doc_id,
                                entry->owner->title, im.bbox}};
}

std::vector<std::pair<std::size_t, std::size_t>> paragraph_bounds(const Utf8Text& text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = text.length();
  std::size_t begin = 0;
  std::size_t i = 0;
  while (i < n) {
    if (text.at(i) == U'\n' && i + 1 < n && text.at(i + 1) == U'\n') {
      std::size_t j = i;
      while (j < n && text.at(j) == U'\n') ++j;
      if (i > begin) out.emplace_back(begin, i);
      begin = j;
      i = j;
    } else {
      ++i;
    }
  }
  if (n > begin || out.empty()) out.emplace_back(begin, n);
  return out;
}

Result<Paragraph> expand_context(const CorpusIndex& corpus, const Records& records,
                                 const std::string& id) {
  const Provenance* rec = find(records, id);
  if (!rec) return missing(id);
  const auto* t = std::get_if<TextProvenance>(rec);
  if (!t) return error("NOT_TEXT", id, "context expansion applies to text provenance only");
  Diagnostics d = check_span(corpus, id, t->doc_id, t->start, t->end);
  if (!d.empty()) return d;
  const auto& text = corpus.document(t->doc_id)->text;
  const auto start = static_cast<std::size_t>(t->start);
  const auto end = static_cast<std::size_t>(t->end);
  std::size_t p_start = start, p_end = end;
  for (const auto& [b, e] : paragraph_bounds(text)) {
    if (b <= start && start < e) p_start = b;
    if (b < end && end <= e) p_end = e;
  }
  p_start = std::min(p_start, start);
  p_end = std::max(p_end, end);
  return Paragraph{static_cast<std::int64_t>(p_start), static_cast<std::int64_t>(p_end),
                   std::string(text.slice(p_start, p_end))};
}

Result<SourceLocation> locate_source(const CorpusIndex& corpus, const Records& records,
                                     const std::string& id) {
  const Provenance* rec = find(records, id);
  if (!rec) return missing(id);
  SourceLocation loc;
  if (const auto* t = std::get_if<TextProvenance>(rec)) {
    const auto* doc = corpus.document(t->doc_id);
    if (!doc) return error("REF_MISSING", id, "document '" + t->doc_id + "' is not in the corpus");
    loc.is_text = true;
    loc.doc_id = t->doc_id;
    loc.title = doc->document->title;
    loc.start = t->start;
    loc.end = t->end;
    return loc;
  }
  const auto& im = std::get<ImageProvenance>(*rec);
  const auto* entry = corpus.image(im.image_id);
  if (!entry) return error("REF_MISSING", id, "image '" + im.image_id + "' is not in the corpus");
  loc.is_text = false;
  loc.image_id = im.image_id;
  loc.doc_id = entry->owner->doc_id;
  loc.title = entry->owner->title;
  loc.bbox = im.bbox;
  return loc;
}

formats::Json to_json(const Resolved& r) {
  formats::Json j = formats::Json::object();
  if (const auto* t = std::get_if<ResolvedText>(&r)) {
    j["kind"] = "text";
    j["id"] = t->id;
    j["doc_id"] = t->doc_id;
    j["title"] = t->title;
    j["start"] = t->start;
    j["end"] = t->end;
    j["text"] = t->text;
  } else {
    const auto& im = std::get<ResolvedImage>(r);
    j["kind"] = "image";
    j["id"] = im.id;
    j["image_id"] = im.image_id;
    j["media"] = im.media;
    j["width"] = im.width;
    j["height"] = im.height;
    j["doc_id"] = im.doc_id;
    j["title"] = im.title;
    j["bbox"] = formats::to_json(im.bbox);
  }
  return j;
}

formats::Json to_json(const Paragraph& p) {
  formats::Json j = formats::Json::object();
  j["start"] = p.start;
  j["end"] = p.end;
  j["text"] = p.text;
  return j;
}

formats::Json to_json(const SourceLocation& s) {
  formats::Json j = formats::Json::object();
  j["kind"] = s.is_text ? "text" : "image";
  j["doc_id"] = s.doc_id;
  if (!s.is_text) j["image_id"] = s.image_id;
  j["title"] = s.title;
  if (s.is_text) {
    j["start"] = s.start;
    j["end"] = s.end;
  } else {
    j["bbox"] = formats::to_json(s.bbox);
  }
  return j;
}

}  // namespace ege::provenance
