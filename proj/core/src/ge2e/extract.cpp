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

#include "deprspeech/ge2e/extract.hpp"

#include <map>

#include "deprspeech/common/io.hpp"
#include "deprspeech/common/parallel.hpp"
#include "deprspeech/corpus/wav.hpp"
#include "deprspeech/feats/mfcc.hpp"

namespace deprspeech::ge2e {

namespace {

constexpr int kEmbedBatch = 64;

struct PendingSegment {
  std::string recording_id;
  int segment_index = 0;
  nn::MatX<float> features;
};

}  // namespace

void ExtractionReport::write_csv(const std::filesystem::path& path) const {
  std::string out = "recording_id,segment_index,status,frames\n";
  for (const auto& row : rows) {
    out += row.recording_id;
    out += ',';
    out += std::to_string(row.segment_index);
    out += ',';
    out += row.status;
    out += ',';
    out += std::to_string(row.frames);
    out += '\n';
  }
  write_text_file(path, out);
}

ExtractionReport extract_segment_embeddings(const corpus::Manifest& manifest,
                                            const corpus::SegmentTable& segments,
                                            const EmbeddingModel<float>& model,
                                            feats::FeatureCache* cache) {
  const feats::FrameSpec frontend = feats::embedding_frontend_spec();
  std::vector<const corpus::Recording*> records;
  for (const auto& [rec_id, segs] : segments) records.push_back(&manifest.find(rec_id));

  // Stage 1: frontend MFCCs per segment, parallel across recordings.
  std::vector<std::vector<PendingSegment>> pending(records.size());
  std::vector<std::vector<ExtractionReport::Row>> skipped(records.size());
  parallel_for(records.size(), [&](size_t idx) {
    corpus::Recording rec = *records[idx];
    corpus::load_audio(rec, manifest);
    const int sr = rec.sample_rate;
    const auto window = static_cast<size_t>(frontend.window_samples(sr));
    for (const auto& seg : segments.at(rec.id)) {
      const auto begin = static_cast<size_t>(seg.start_sec * sr);
      const auto end =
          std::min(static_cast<size_t>(seg.end_sec * sr), rec.samples.size());
      if (end <= begin || end - begin < window) {
        skipped[idx].push_back({rec.id, seg.index, "skipped_short", 0});
        continue;
      }
      const std::span<const double> span(rec.samples.data() + begin, end - begin);
      const feats::FeatureMatrix m = feats::mfcc(span, sr, frontend);
      pending[idx].push_back({rec.id, seg.index, m.data.cast<float>()});
    }
  });

  // Stage 2: group equal-length segments and embed them batched.
  std::map<int, std::vector<const PendingSegment*>> by_frames;
  for (const auto& per_rec : pending)
    for (const auto& p : per_rec)
      by_frames[static_cast<int>(p.features.rows())].push_back(&p);

  ExtractionReport report;
  for (const auto& [frames, group] : by_frames) {
    for (size_t start = 0; start < group.size(); start += kEmbedBatch) {
      const size_t count = std::min<size_t>(kEmbedBatch, group.size() - start);
      std::vector<nn::MatX<float>> xs(static_cast<size_t>(frames));
      const int dim = static_cast<int>(group[start]->features.cols());
      for (int t = 0; t < frames; ++t) {
        xs[static_cast<size_t>(t)].resize(static_cast<Eigen::Index>(count), dim);
        for (size_t r = 0; r < count; ++r)
          xs[static_cast<size_t>(t)].row(static_cast<Eigen::Index>(r)) =
              group[start + r]->features.row(t);
      }
      const nn::MatX<float> emb = model.forward(xs, nullptr);
      for (size_t r = 0; r < count; ++r) {
        const PendingSegment& p = *group[start + r];
        cache->put(p.recording_id, p.segment_index, feats::FeatureKind::kSpkEmb,
                   Eigen::VectorXf(emb.row(static_cast<Eigen::Index>(r)).transpose()));
        report.rows.push_back({p.recording_id, p.segment_index, "ok", frames});
        ++report.n_ok;
      }
    }
  }
  for (const auto& rows : skipped)
    for (const auto& row : rows) {
      report.rows.push_back(row);
      ++report.n_skipped;
    }

  std::sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.recording_id, a.segment_index) <
           std::tie(b.recording_id, b.segment_index);
  });
  return report;
}

}  // namespace deprspeech::ge2e
