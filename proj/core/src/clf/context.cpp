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

#include "deprspeech/clf/context.hpp"

namespace deprspeech::clf {

namespace {

/// Windows of consecutive indices [start, start + context) over a
/// recording's ordered segments.
template <class MakeSample>
void windows_over(const std::vector<corpus::Segment>& segs, int context, int stride,
                  const MakeSample& make) {
  const int n = static_cast<int>(segs.size());
  for (int start = 0; start + context <= n; start += stride) make(start);
}

nn::MatX<float> gather_window(const std::vector<corpus::Segment>& segs, int start,
                              int context, const feats::FeatureCache& cache,
                              feats::FeatureKind kind) {
  nn::MatX<float> window(context, feats::feature_dim(kind));
  for (int r = 0; r < context; ++r) {
    const auto& seg = segs[static_cast<size_t>(start + r)];
    window.row(r) = cache.get(seg.recording_id, seg.index, kind).transpose();
  }
  return window;
}

void check_context(int context) {
  if (context <= 0)
    throw ValidationError("context must be >= 1, got " + std::to_string(context));
}

}  // namespace

std::vector<ContextSample> make_context_samples(const corpus::SegmentTable& segments,
                                                const feats::FeatureCache& cache,
                                                feats::FeatureKind kind, int context,
                                                int stride,
                                                ContextBuildReport* report) {
  check_context(context);
  if (stride <= 0) stride = context;
  std::vector<ContextSample> out;
  for (const auto& [rec_id, segs] : segments) {
    if (static_cast<int>(segs.size()) < context) {
      if (report) report->skipped_recordings.push_back(rec_id);
      continue;
    }
    windows_over(segs, context, stride, [&](int start) {
      ContextSample s;
      s.recording_id = rec_id;
      s.start_index = segs[static_cast<size_t>(start)].index;
      s.label = segs[static_cast<size_t>(start)].label;
      s.window = gather_window(segs, start, context, cache, kind);
      out.push_back(std::move(s));
    });
  }
  return out;
}

std::vector<FusionSample> make_fusion_samples(const corpus::SegmentTable& segments,
                                              const feats::FeatureCache& cache,
                                              feats::FeatureKind kind_a,
                                              feats::FeatureKind kind_b, int context,
                                              int stride,
                                              ContextBuildReport* report) {
  check_context(context);
  if (stride <= 0) stride = context;
  std::vector<FusionSample> out;
  for (const auto& [rec_id, segs] : segments) {
    if (static_cast<int>(segs.size()) < context) {
      if (report) report->skipped_recordings.push_back(rec_id);
      continue;
    }
    windows_over(segs, context, stride, [&](int start) {
      FusionSample s;
      s.recording_id = rec_id;
      s.start_index = segs[static_cast<size_t>(start)].index;
      s.label = segs[static_cast<size_t>(start)].label;
      s.window_a = gather_window(segs, start, context, cache, kind_a);
      s.window_b = gather_window(segs, start, context, cache, kind_b);
      out.push_back(std::move(s));
    });
  }
  return out;
}

corpus::SegmentTable segments_for_split(const corpus::SegmentTable& segments,
                                        const corpus::Manifest& manifest,
                                        corpus::Split split) {
  corpus::SegmentTable out;
  for (const auto* rec : manifest.split_records(split)) {
    const auto it = segments.find(rec->id);
    if (it != segments.end()) out[rec->id] = it->second;
  }
  return out;
}

}  // namespace deprspeech::clf
