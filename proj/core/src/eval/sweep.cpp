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

#include "deprspeech/eval/sweep.hpp"

#include "deprspeech/common/io.hpp"

namespace deprspeech::eval {

namespace {

int shortest_test_recording(const corpus::SegmentTable& segments,
                            const corpus::Manifest& manifest) {
  int shortest = -1;
  for (const auto* rec : manifest.split_records(corpus::Split::kTest)) {
    const auto it = segments.find(rec->id);
    if (it == segments.end()) continue;
    const int n = static_cast<int>(it->second.size());
    if (shortest < 0 || n < shortest) shortest = n;
  }
  if (shortest < 0)
    throw ValidationError("context_sweep: no test recordings with segments");
  return shortest;
}

}  // namespace

std::vector<SweepRow> context_sweep(const SweepConfig& cfg,
                                    const corpus::Manifest& manifest,
                                    const corpus::SegmentTable& segments,
                                    const feats::FeatureCache& cache) {
  if (cfg.contexts.empty())
    throw ValidationError("context_sweep: empty context list");
  if (cfg.seeds.empty())
    throw ValidationError("context_sweep: empty seed list");
  for (size_t i = 1; i < cfg.contexts.size(); ++i)
    if (cfg.contexts[i] <= cfg.contexts[i - 1])
      throw ValidationError("context_sweep: contexts must be strictly increasing (" +
                            std::to_string(cfg.contexts[i - 1]) + " then " +
                            std::to_string(cfg.contexts[i]) + ")");
  const int shortest = shortest_test_recording(segments, manifest);
  for (const int ctx : cfg.contexts) {
    if (ctx <= 0) throw ValidationError("context_sweep: contexts must be >= 1");
    if (ctx > shortest)
      throw ValidationError("context_sweep: context " + std::to_string(ctx) +
                            " exceeds the shortest test recording (" +
                            std::to_string(shortest) + " segments)");
  }

  const auto train_segs = clf::segments_for_split(segments, manifest, corpus::Split::kTrain);
  const auto valid_segs = clf::segments_for_split(segments, manifest, corpus::Split::kValid);
  const auto test_segs = clf::segments_for_split(segments, manifest, corpus::Split::kTest);
  const bool fused = clf::is_fusion(cfg.arch);

  std::vector<SweepRow> rows;
  for (const int ctx : cfg.contexts) {
    clf::ArchSpec spec;
    spec.kind = cfg.arch;
    spec.input_dim = feats::feature_dim(cfg.kind_a);
    spec.input_dim_b = fused ? feats::feature_dim(cfg.kind_b) : 0;
    spec.context = cfg.arch == clf::Arch::kDnnD ? 1 : ctx;
    spec.combine = cfg.combine;

    const auto batch_for = [&](const corpus::SegmentTable& segs) {
      if (fused)
        return clf::to_batch<float>(clf::make_fusion_samples(segs, cache, cfg.kind_a,
                                                             cfg.kind_b, spec.context));
      return clf::to_batch<float>(
          clf::make_context_samples(segs, cache, cfg.kind_a, spec.context));
    };
    const auto train_batch = batch_for(train_segs);
    const auto valid_batch = batch_for(valid_segs);

    SweepRow row;
    row.context = ctx;
    for (const uint64_t seed : cfg.seeds) {
      auto model = clf::build_model<float>(spec, seed);
      clf::TrainConfig tc = cfg.train;
      tc.seed = seed;
      const auto trained = clf::train_classifier(model.get(), spec, train_batch,
                                                 valid_batch, tc);
      auto best = clf::model_from_checkpoint(trained.best);
      const auto report =
          evaluate_recordings(best.get(), spec, test_segs, cache, cfg.kind_a, cfg.kind_b);
      row.f1_d += report.metrics.f1_depressed;
      row.f1_h += report.metrics.f1_healthy;
      row.acc += report.metrics.weighted_accuracy;
    }
    const auto n = static_cast<double>(cfg.seeds.size());
    row.f1_d /= n;
    row.f1_h /= n;
    row.acc /= n;
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::filesystem::path& path) {
  std::string out = "context,f1_d,f1_h,acc\n";
  for (const auto& row : rows) {
    out += std::to_string(row.context);
    out += ',';
    out += format_real(row.f1_d);
    out += ',';
    out += format_real(row.f1_h);
    out += ',';
    out += format_real(row.acc);
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace deprspeech::eval
