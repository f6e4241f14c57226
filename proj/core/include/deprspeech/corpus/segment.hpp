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

#ifndef DEPRSPEECH_CORPUS_SEGMENT_HPP_
#define DEPRSPEECH_CORPUS_SEGMENT_HPP_

#include <filesystem>
#include <map>
#include <vector>

#include "deprspeech/corpus/types.hpp"

namespace deprspeech::corpus {

/// Interview-style segmentation: client response spans are merged greedily
/// left to right until the accumulated speech duration reaches min_dur, then
/// a segment covering the merged spans is emitted. Inter-span silence does
/// not count toward the duration budget. A trailing accumulation below
/// min_dur is dropped. Requires rec.response_spans.
std::vector<Segment> segment_interview(const Recording& rec, Label label,
                                       double min_dur = 5.0);

/// Fixed-window segmentation: floor(total_dur / dur) back-to-back segments
/// of exactly dur seconds starting at 0; the final partial window is
/// dropped. Requires loaded samples.
std::vector<Segment> segment_fixed(const Recording& rec, Label label, double dur = 5.0);

/// Interview protocol when response spans are present, fixed windows
/// otherwise. Needs loaded samples only for the fixed protocol.
std::vector<Segment> segment_recording(const Manifest& manifest, const Recording& rec,
                                       double dur = 5.0);

/// Segments of one recording, ordered by index.
using SegmentTable = std::map<std::string, std::vector<Segment>>;

/// CSV layout: recording_id,index,start_sec,end_sec,label
void write_segments_csv(const SegmentTable& table, const std::filesystem::path& path);
SegmentTable read_segments_csv(const std::filesystem::path& path);

}  // namespace deprspeech::corpus

#endif  // DEPRSPEECH_CORPUS_SEGMENT_HPP_
