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

#ifndef DEPRSPEECH_GE2E_EXTRACT_HPP_
#define DEPRSPEECH_GE2E_EXTRACT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "deprspeech/corpus/segment.hpp"
#include "deprspeech/feats/cache.hpp"
#include "deprspeech/ge2e/model.hpp"

namespace deprspeech::ge2e {

struct ExtractionReport {
  struct Row {
    std::string recording_id;
    int segment_index = 0;
    std::string status;  // "ok" or "skipped_short"
    int frames = 0;
  };
  std::vector<Row> rows;
  int n_ok = 0;
  int n_skipped = 0;

  void write_csv(const std::filesystem::path& path) const;
};

/// One unit-norm embedding per segment, on frozen parameters and over all
/// frames of the segment (no training-style crop). Segments shorter than
/// one MFCC window are skipped with a report entry. Embeddings land in the
/// cache under FeatureKind::kSpkEmb; call cache->flush() to persist.
ExtractionReport extract_segment_embeddings(const corpus::Manifest& manifest,
                                            const corpus::SegmentTable& segments,
                                            const EmbeddingModel<float>& model,
                                            feats::FeatureCache* cache);

}  // namespace deprspeech::ge2e

#endif  // DEPRSPEECH_GE2E_EXTRACT_HPP_
