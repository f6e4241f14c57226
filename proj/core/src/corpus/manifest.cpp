// Copyright (c) 2026 The deprspeech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "deprspeech/corpus/manifest.hpp"

#include <set>
#include <string>

#include <json.hpp>

#include "deprspeech/common/io.hpp"

namespace deprspeech::corpus {

namespace {

using nlohmann::json;

Recording parse_record(const json& j, size_t line_no) {
  const auto ctx = [&](const char* field) {
    return "manifest line " + std::to_string(line_no) + ": field '" + field + "' ";
  };
  Recording rec;
  try {
    rec.id = j.at("id").get<std::string>();
    rec.speaker_id = j.at("speaker_id").get<std::string>();
    rec.audio_path = j.at("audio_path").get<std::string>();
    rec.sample_rate = j.at("sample_rate").get<int>();
    rec.depression_score = j.at("depression_score").get<int>();
    rec.split = split_from_string(j.at("split").get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError("manifest line " + std::to_string(line_no) + ": " + e.what());
  }
  if (rec.sample_rate <= 0)
    throw ValidationError(ctx("sample_rate") + "must be positive");
  if (rec.depression_score < 0)
    throw ValidationError(ctx("depression_score") + "must be >= 0");
  if (j.contains("response_spans")) {
    std::vector<ResponseSpan> spans;
    for (const auto& pair : j.at("response_spans")) {
      if (!pair.is_array() || pair.size() != 2)
        throw ParseError(ctx("response_spans") + "entries must be [start_sec, end_sec]");
      ResponseSpan span{pair[0].get<double>(), pair[1].get<double>()};
      if (span.end_sec <= span.start_sec)
        throw ValidationError(ctx("response_spans") + "has end <= start");
      if (!spans.empty() && span.start_sec < spans.back().end_sec)
        throw ValidationError(ctx("response_spans") +
                              "must be ordered and non-overlapping");
      spans.push_back(span);
    }
    rec.response_spans = std::move(spans);
  }
  return rec;
}

}  // namespace

Manifest load_manifest(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    throw Error("manifest not found: " + path.string());
  Manifest manifest;
  manifest.base_dir = path.has_parent_path() ? path.parent_path() : ".";

  const auto lines = split_lines(read_text_file(path));
  bool first_content_line = true;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    json j;
    try {
      j = json::parse(lines[i]);
    } catch (const json::exception& e) {
      throw ParseError("manifest line " + std::to_string(i + 1) + ": " + e.what());
    }
    if (first_content_line && !j.contains("id")) {
      // Metadata line.
      if (j.contains("scale")) manifest.scale = scale_from_string(j.at("scale"));
      if (j.contains("threshold")) manifest.threshold = j.at("threshold").get<int>();
      first_content_line = false;
      continue;
    }
    first_content_line = false;
    manifest.records.push_back(parse_record(j, i + 1));
  }
  validate_manifest(manifest);
  return manifest;
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  std::string out;
  json meta;
  meta["scale"] = to_string(manifest.scale);
  meta["threshold"] = manifest.threshold;
  out += meta.dump();
  out += '\n';
  for (const auto& rec : manifest.records) {
    json j;
    j["id"] = rec.id;
    j["speaker_id"] = rec.speaker_id;
    j["audio_path"] = rec.audio_path.generic_string();
    j["sample_rate"] = rec.sample_rate;
    j["depression_score"] = rec.depression_score;
    j["split"] = to_string(rec.split);
    if (rec.response_spans) {
      json spans = json::array();
      for (const auto& span : *rec.response_spans)
        spans.push_back({span.start_sec, span.end_sec});
      j["response_spans"] = spans;
    }
    out += j.dump();
    out += '\n';
  }
  write_text_file(path, out);
}

void validate_manifest(const Manifest& manifest) {
  if (manifest.threshold < 0 || manifest.threshold > scale_max(manifest.scale))
    throw ValidationError("manifest threshold " + std::to_string(manifest.threshold) +
                          " outside scale range 0.." +
                          std::to_string(scale_max(manifest.scale)));
  std::set<std::string> ids;
  for (const auto& rec : manifest.records) {
    if (!ids.insert(rec.id).second)
      throw ValidationError("duplicate recording id '" + rec.id + "' in manifest");
    if (rec.depression_score > scale_max(manifest.scale))
      throw ValidationError("recording '" + rec.id + "': score " +
                            std::to_string(rec.depression_score) + " exceeds " +
                            to_string(manifest.scale) + " maximum " +
                            std::to_string(scale_max(manifest.scale)));
  }
}

}  // namespace deprspeech::corpus
