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

#include "deprspeech/ge2e/dataset.hpp"

#include <algorithm>
#include <map>

#include "deprspeech/common/parallel.hpp"
#include "deprspeech/corpus/wav.hpp"
#include "deprspeech/feats/mfcc.hpp"

namespace deprspeech::ge2e {

std::vector<nn::MatX<float>> Batch::time_major() const {
  std::vector<nn::MatX<float>> xs(static_cast<size_t>(frames));
  const auto batch = static_cast<Eigen::Index>(crops.size());
  const auto dim = crops.empty() ? 0 : crops[0].cols();
  for (int t = 0; t < frames; ++t) {
    xs[static_cast<size_t>(t)].resize(batch, dim);
    for (Eigen::Index r = 0; r < batch; ++r)
      xs[static_cast<size_t>(t)].row(r) = crops[static_cast<size_t>(r)].row(t);
  }
  return xs;
}

Dataset build_dataset(const corpus::Manifest& manifest, corpus::Split split,
                      const feats::FrameSpec& frontend) {
  const auto records = manifest.split_records(split);
  std::vector<std::vector<Utterance>> per_record(records.size());
  std::vector<std::string> speaker_of(records.size());

  parallel_for(records.size(), [&](size_t idx) {
    corpus::Recording rec = *records[idx];  // local copy, audio loaded here
    corpus::load_audio(rec, manifest);
    const auto segments = corpus::segment_recording(manifest, rec);
    const int sr = rec.sample_rate;
    std::vector<Utterance> utts;
    utts.reserve(segments.size());
    for (const auto& seg : segments) {
      const auto begin = static_cast<size_t>(seg.start_sec * sr);
      const auto end = std::min(static_cast<size_t>(seg.end_sec * sr), rec.samples.size());
      const std::span<const double> span(rec.samples.data() + begin, end - begin);
      if (span.size() < static_cast<size_t>(frontend.window_samples(sr))) continue;
      const feats::FeatureMatrix m = feats::mfcc(span, sr, frontend);
      Utterance utt;
      utt.recording_id = rec.id;
      utt.segment_index = seg.index;
      utt.features = m.data.cast<float>();
      utts.push_back(std::move(utt));
    }
    per_record[idx] = std::move(utts);
    speaker_of[idx] = records[idx]->speaker_id;
  });

  std::map<std::string, SpeakerUtterances> by_speaker;
  for (size_t i = 0; i < records.size(); ++i) {
    auto& bucket = by_speaker[speaker_of[i]];
    bucket.speaker_id = speaker_of[i];
    for (auto& utt : per_record[i]) bucket.utterances.push_back(std::move(utt));
  }
  Dataset out;
  out.speakers.reserve(by_speaker.size());
  for (auto& [id, bucket] : by_speaker) out.speakers.push_back(std::move(bucket));
  return out;
}

int eligible_speaker_count(const Dataset& data, int m_utts, int crop_frames) {
  int count = 0;
  for (const auto& spk : data.speakers) {
    int utts = 0;
    for (const auto& u : spk.utterances)
      if (u.frames() >= crop_frames) ++utts;
    if (utts >= m_utts) ++count;
  }
  return count;
}

Batch build_batch(const Dataset& data, int n_speakers, int m_utts, int crop_frames,
                  uint64_t seed) {
  if (n_speakers < 2 || m_utts < 2)
    throw ValidationError("build_batch: need N >= 2 and M >= 2");

  struct EligibleSpeaker {
    const SpeakerUtterances* speaker;
    std::vector<size_t> utterances;  // indices with enough frames
  };
  std::vector<EligibleSpeaker> eligible;
  for (const auto& spk : data.speakers) {
    EligibleSpeaker e{&spk, {}};
    for (size_t u = 0; u < spk.utterances.size(); ++u)
      if (spk.utterances[u].frames() >= crop_frames) e.utterances.push_back(u);
    if (static_cast<int>(e.utterances.size()) >= m_utts) eligible.push_back(std::move(e));
  }
  if (static_cast<int>(eligible.size()) < n_speakers)
    throw CapacityError("build_batch: " + std::to_string(eligible.size()) +
                        " speakers have >= " + std::to_string(m_utts) +
                        " utterances of >= " + std::to_string(crop_frames) +
                        " frames, need " + std::to_string(n_speakers));

  Rng rng(seed);
  Batch batch;
  batch.n_speakers = n_speakers;
  batch.m_utts = m_utts;
  batch.frames = crop_frames;
  batch.crops.reserve(static_cast<size_t>(n_speakers) * m_utts);

  const auto spk_picks =
      rng.sample_without_replacement(eligible.size(), static_cast<size_t>(n_speakers));
  for (const size_t sp : spk_picks) {
    const auto& e = eligible[sp];
    const auto utt_picks = rng.sample_without_replacement(e.utterances.size(),
                                                          static_cast<size_t>(m_utts));
    for (const size_t up : utt_picks) {
      const Utterance& utt = e.speaker->utterances[e.utterances[up]];
      const int slack = utt.frames() - crop_frames;
      const int start =
          slack > 0 ? static_cast<int>(rng.below(static_cast<uint64_t>(slack) + 1)) : 0;
      batch.crops.push_back(utt.features.middleRows(start, crop_frames));
      batch.refs.push_back(
          {e.speaker->speaker_id, utt.recording_id, utt.segment_index, start});
    }
  }
  return batch;
}

}  // namespace deprspeech::ge2e
