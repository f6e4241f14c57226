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

#include "deprspeech/corpus/segment.hpp"

#include <string>

#include "deprspeech/common/error.hpp"
#include "deprspeech/common/io.hpp"

namespace deprspeech::corpus {

std::vector<Segment> segment_interview(const Recording& rec, Label label, double min_dur) {
  if (!rec.response_spans)
    throw ValidationError("recording '" + rec.id + "': segment_interview needs response_spans");
  std::vector<Segment> out;
  double acc_speech = 0.0;
  double group_start = 0.0;
  bool in_group = false;
  for (const auto& span : *rec.response_spans) {
    if (!in_group) {
      group_start = span.start_sec;
      in_group = true;
    }
    acc_speech += span.duration();
    if (acc_speech >= min_dur) {
      Segment seg;
      seg.recording_id = rec.id;
      seg.index = static_cast<int>(out.size());
      seg.start_sec = group_start;
      seg.end_sec = span.end_sec;
      seg.label = label;
      out.push_back(seg);
      acc_speech = 0.0;
      in_group = false;
    }
  }
  return out;  // trailing accumulation below min_dur is dropped
}

std::vector<Segment> segment_fixed(const Recording& rec, Label label, double dur) {
  if (!rec.samples_loaded)
    throw ValidationError("recording '" + rec.id + "': segment_fixed needs loaded samples");
  if (dur <= 0.0) throw ValidationError("segment_fixed: dur must be positive");
  const double total = rec.duration_sec();
  const int n = static_cast<int>(total / dur);
  std::vector<Segment> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Segment seg;
    seg.recording_id = rec.id;
    seg.index = i;
    seg.start_sec = i * dur;
    seg.end_sec = (i + 1) * dur;
    seg.label = label;
    out.push_back(seg);
  }
  return out;
}

std::vector<Segment> segment_recording(const Manifest& manifest, const Recording& rec,
                                       double dur) {
  const Label label = manifest.label_of(rec);
  if (rec.response_spans) return segment_interview(rec, label, dur);
  return segment_fixed(rec, label, dur);
}

void write_segments_csv(const SegmentTable& table, const std::filesystem::path& path) {
  std::string out = "recording_id,index,start_sec,end_sec,label\n";
  for (const auto& [rec_id, segments] : table) {
    for (const auto& seg : segments) {
      out += rec_id;
      out += ',';
      out += std::to_string(seg.index);
      out += ',';
      out += format_real(seg.start_sec);
      out += ',';
      out += format_real(seg.end_sec);
      out += ',';
      out += to_string(seg.label);
      out += '\n';
    }
  }
  write_text_file(path, out);
}

SegmentTable read_segments_csv(const std::filesystem::path& path) {
  const auto lines = split_lines(read_text_file(path));
  if (lines.empty() || lines[0] != "recording_id,index,start_sec,end_sec,label")
    throw ParseError("segments csv '" + path.string() + "': bad or missing header");
  SegmentTable table;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != 5)
      throw ParseError("segments csv line " + std::to_string(i + 1) +
                       ": expected 5 fields, got " + std::to_string(fields.size()));
    Segment seg;
    seg.recording_id = fields[0];
    seg.index = std::stoi(fields[1]);
    seg.start_sec = std::stod(fields[2]);
    seg.end_sec = std::stod(fields[3]);
    seg.label = label_from_string(fields[4]);
    table[seg.recording_id].push_back(seg);
  }
  return table;
}

}  // namespace deprspeech::corpus
