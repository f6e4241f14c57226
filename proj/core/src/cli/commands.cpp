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

#include "deprspeech/cli/commands.hpp"

#include <atomic>
#include <cstdio>
#include <functional>
#include <map>

#include "deprspeech/clf/train.hpp"
#include "deprspeech/common/io.hpp"
#include "deprspeech/common/parallel.hpp"
#include "deprspeech/corpus/manifest.hpp"
#include "deprspeech/corpus/synth.hpp"
#include "deprspeech/corpus/wav.hpp"
#include "deprspeech/eval/sweep.hpp"
#include "deprspeech/feats/lld.hpp"
#include "deprspeech/feats/mfcc.hpp"
#include "deprspeech/ge2e/extract.hpp"
#include "deprspeech/ge2e/train.hpp"

namespace deprspeech::cli {

namespace {

using corpus::Manifest;
using corpus::SegmentTable;
using corpus::Split;
using feats::FeatureKind;

SegmentTable compute_segments(const Manifest& manifest, double dur) {
  std::vector<std::vector<corpus::Segment>> slots(manifest.records.size());
  parallel_for(manifest.records.size(), [&](size_t idx) {
    corpus::Recording rec = manifest.records[idx];
    if (!rec.response_spans) corpus::load_audio(rec, manifest);
    slots[idx] = corpus::segment_recording(manifest, rec, dur);
  });
  SegmentTable table;
  for (size_t i = 0; i < slots.size(); ++i)
    if (!slots[i].empty()) table[manifest.records[i].id] = std::move(slots[i]);
  return table;
}

int shortest_test_segment_count(const SegmentTable& segments, const Manifest& manifest) {
  int shortest = -1;
  for (const auto* rec : manifest.split_records(Split::kTest)) {
    const auto it = segments.find(rec->id);
    if (it == segments.end()) continue;
    const int n = static_cast<int>(it->second.size());
    if (shortest < 0 || n < shortest) shortest = n;
  }
  return shortest;
}

void check_context_against_test(int context, const SegmentTable& segments,
                                const Manifest& manifest) {
  const int shortest = shortest_test_segment_count(segments, manifest);
  if (shortest > 0 && context > shortest)
    throw ValidationError("context " + std::to_string(context) +
                          " exceeds the shortest test recording (" +
                          std::to_string(shortest) + " segments)");
}

clf::ArchSpec spec_from_config(const RunConfig& cfg, FeatureKind kind_a,
                               FeatureKind kind_b) {
  clf::ArchSpec spec;
  spec.kind = clf::arch_from_string(cfg.require_str("arch"));
  spec.input_dim = feats::feature_dim(kind_a);
  spec.input_dim_b = clf::is_fusion(spec.kind) ? feats::feature_dim(kind_b) : 0;
  spec.context = static_cast<int>(cfg.integer("context", 1));
  spec.combine = clf::combine_from_string(cfg.str("combine", "hadamard"));
  return spec;
}

clf::TrainConfig train_config(const RunConfig& cfg) {
  clf::TrainConfig tc;
  tc.epochs = static_cast<int>(cfg.integer("epochs", 50));
  tc.batch_size = static_cast<int>(cfg.integer("batch_size", 128));
  tc.adam.lr = cfg.real("lr", 0.0005);
  tc.adam.weight_decay = cfg.real("weight_decay", 0.0);
  tc.seed = cfg.seed();
  return tc;
}

void write_matrix_csv(const feats::FeatureMatrix& m, const std::filesystem::path& path) {
  std::string out;
  for (size_t i = 0; i < m.dim_names.size(); ++i) {
    if (i) out += ',';
    out += m.dim_names[i];
  }
  out += '\n';
  for (Eigen::Index r = 0; r < m.data.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.data.cols(); ++c) {
      if (c) out += ',';
      out += format_real(m.data(r, c));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace

void cmd_synth(const RunConfig& cfg) {
  const auto out = cfg.out_dir();
  cfg.write_resolved(out);
  corpus::SynthSpec spec;
  spec.n_speakers = static_cast<int>(cfg.integer("n_speakers", 20));
  spec.recordings_per_speaker =
      static_cast<int>(cfg.integer("recordings_per_speaker", 4));
  spec.recording_dur = cfg.real("recording_dur", 60.0);
  spec.class_effect_size = cfg.real("class_effect_size", 1.0);
  spec.sample_rate = static_cast<int>(cfg.integer("sample_rate", 8000));
  spec.scale = corpus::scale_from_string(cfg.str("scale", "phq8"));
  spec.threshold = static_cast<int>(cfg.integer("threshold", 10));
  spec.train_frac = cfg.real("train_frac", 0.7);
  spec.valid_frac = cfg.real("valid_frac", 0.15);
  const Manifest manifest = corpus::generate_synthetic_corpus(spec, cfg.seed(), out);
  std::printf("synth: %zu recordings from %d speakers -> %s\n", manifest.records.size(),
              spec.n_speakers, out.string().c_str());
}

void cmd_features(const RunConfig& cfg) {
  if (cfg.has("dump_wav")) {
    const auto wav = corpus::read_wav(cfg.require_str("dump_wav"));
    const std::string kind = cfg.str("dump_kind", "mfcc");
    feats::FeatureMatrix m;
    if (kind == "mfcc")
      m = feats::mfcc(wav.samples, wav.sample_rate, feats::embedding_frontend_spec());
    else if (kind == "lld")
      m = feats::lld_stack(wav.samples, wav.sample_rate);
    else if (kind == "is09")
      m = feats::is09_lld(wav.samples, wav.sample_rate);
    else
      throw ValidationError("dump_kind must be mfcc|lld|is09, got '" + kind + "'");
    const std::filesystem::path out_path = cfg.str("dump_out", "matrix.csv");
    write_matrix_csv(m, out_path);
    std::printf("features: dumped %dx%d %s matrix -> %s\n", m.frames(), m.dims(),
                kind.c_str(), out_path.string().c_str());
    return;
  }

  const auto out = cfg.out_dir();
  cfg.write_resolved(out);
  const Manifest manifest = corpus::load_manifest(cfg.require_str("manifest"));
  const double dur = cfg.real("segment_dur", 5.0);
  const bool force = cfg.flag("force", false);

  std::vector<FeatureKind> kinds;
  for (const auto& name : [&] {
         std::vector<std::string> items;
         const std::string list = cfg.str("features", "is09,covarep");
         size_t start = 0;
         while (start <= list.size()) {
           size_t end = list.find(',', start);
           if (end == std::string::npos) end = list.size();
           if (end > start) items.push_back(list.substr(start, end - start));
           start = end + 1;
         }
         return items;
       }()) {
    const FeatureKind kind = feats::feature_kind_from_string(name);
    if (kind == FeatureKind::kSpkEmb)
      throw ValidationError(
          "feature kind spk_emb needs a trained checkpoint; use the embed command");
    kinds.push_back(kind);
  }

  auto cache = feats::FeatureCache::open(out);
  struct Staged {
    std::string recording_id;
    int segment_index;
    FeatureKind kind;
    Eigen::VectorXd values;
  };
  std::vector<std::vector<Staged>> staged(manifest.records.size());
  std::vector<std::vector<corpus::Segment>> seg_slots(manifest.records.size());
  std::atomic<int64_t> skipped{0};

  parallel_for(manifest.records.size(), [&](size_t idx) {
    corpus::Recording rec = manifest.records[idx];
    corpus::load_audio(rec, manifest);
    const auto segments = corpus::segment_recording(manifest, rec, dur);
    seg_slots[idx] = segments;
    const int sr = rec.sample_rate;
    for (const auto& seg : segments) {
      const auto begin = static_cast<size_t>(seg.start_sec * sr);
      const auto end =
          std::min(static_cast<size_t>(seg.end_sec * sr), rec.samples.size());
      const std::span<const double> span(rec.samples.data() + begin, end - begin);
      for (const FeatureKind kind : kinds) {
        if (!force && cache.has(rec.id, seg.index, kind)) {
          ++skipped;
          continue;
        }
        feats::SegmentVector vec;
        if (kind == FeatureKind::kIs09)
          vec = feats::functionals_is09(feats::is09_lld(span, sr));
        else
          vec = feats::functionals_stats6(feats::lld_stack(span, sr));
        staged[idx].push_back({rec.id, seg.index, kind, std::move(vec.values)});
      }
    }
  });

  int64_t computed = 0;
  for (const auto& slot : staged)
    for (const auto& s : slot) {
      cache.put(s.recording_id, s.segment_index, s.kind, s.values);
      ++computed;
    }
  cache.flush();

  SegmentTable table;
  for (size_t i = 0; i < seg_slots.size(); ++i)
    if (!seg_slots[i].empty()) table[manifest.records[i].id] = std::move(seg_slots[i]);
  corpus::write_segments_csv(table, out / "segments.csv");
  std::printf("features: computed %lld vectors, reused %lld cached -> %s\n",
              static_cast<long long>(computed), static_cast<long long>(skipped.load()),
              out.string().c_str());
}

void cmd_ge2e_train(const RunConfig& cfg) {
  const auto out = cfg.out_dir();
  cfg.write_resolved(out);
  const Manifest manifest = corpus::load_manifest(cfg.require_str("manifest"));
  const auto frontend = feats::embedding_frontend_spec();

  ge2e::TrainConfig tc;
  tc.n_speakers = static_cast<int>(cfg.integer("n_per_batch", 8));
  tc.m_utts = static_cast<int>(cfg.integer("m_per_batch", 4));
  tc.crop_frames = static_cast<int>(cfg.integer("crop_frames", 160));
  tc.steps = static_cast<int>(cfg.integer("steps", 200));
  tc.adam.lr = cfg.real("lr", 0.0005);
  tc.loss_param_lr_scale = cfg.real("loss_lr_scale", 0.5);
  tc.grad_clip_norm = cfg.real("grad_clip_norm", 0.0);
  tc.seed = cfg.seed();
  tc.hidden = static_cast<int>(cfg.integer("hidden", 256));
  tc.layers = static_cast<int>(cfg.integer("layers", 3));

  const ge2e::Dataset train_data = ge2e::build_dataset(manifest, Split::kTrain, frontend);
  ge2e::Dataset holdout = ge2e::build_dataset(manifest, Split::kValid, frontend);
  if (ge2e::eligible_speaker_count(holdout, tc.m_utts, tc.crop_frames) < 2)
    holdout = train_data;  // tiny corpora: fall back to a fixed unseen-crop batch

  Rng init_rng(derive_seed(tc.seed, "ge2e/init"));
  ge2e::EmbeddingModel<float> model(frontend.n_mfcc, init_rng, tc.hidden, tc.layers);
  ge2e::LossParams loss_params;
  const auto result = ge2e::train(train_data, holdout, &model, &loss_params, tc);

  auto ckpt = ge2e::make_checkpoint(model, loss_params,
                                    {{"seed", std::to_string(tc.seed)},
                                     {"steps", std::to_string(tc.steps)},
                                     {"version", kVersionString}});
  nn::save_checkpoint(ckpt, out / "ge2e.ckpt");

  std::string curve = "step,loss\n";
  for (size_t i = 0; i < result.loss_curve.size(); ++i) {
    curve += std::to_string(i);
    curve += ',';
    curve += format_real(result.loss_curve[i]);
    curve += '\n';
  }
  write_text_file(out / "loss_curve.csv", curve);
  std::printf("ge2e-train: %d steps, holdout loss %.4f -> %.4f, checkpoint %s\n",
              tc.steps, result.holdout_before, result.holdout_after,
              (out / "ge2e.ckpt").string().c_str());
}

void cmd_embed(const RunConfig& cfg) {
  const auto out = cfg.out_dir();
  cfg.write_resolved(out);
  const Manifest manifest = corpus::load_manifest(cfg.require_str("manifest"));
  const auto ckpt = nn::load_checkpoint(cfg.require_str("checkpoint"));
  const auto model = ge2e::model_from_checkpoint(ckpt);
  const SegmentTable segments = compute_segments(manifest, cfg.real("segment_dur", 5.0));

  auto cache = feats::FeatureCache::open(out);
  const auto report = ge2e::extract_segment_embeddings(manifest, segments, model, &cache);
  cache.flush();
  corpus::write_segments_csv(segments, out / "segments.csv");
  report.write_csv(out / "extraction_report.csv");
  std::printf("embed: %d embeddings extracted, %d segments skipped -> %s\n", report.n_ok,
              report.n_skipped, out.string().c_str());
}

void cmd_train(const RunConfig& cfg) {
  const auto out = cfg.out_dir();
  cfg.write_resolved(out);
  const Manifest manifest = corpus::load_manifest(cfg.require_str("manifest"));
  auto cache = feats::FeatureCache::open(cfg.require_str("cache"));
  const SegmentTable segments =
      corpus::read_segments_csv(std::filesystem::path(cfg.require_str("cache")) /
                                "segments.csv");

  const FeatureKind kind_a =
      feats::feature_kind_from_string(cfg.str("features", "spk_emb"));
  const FeatureKind kind_b =
      feats::feature_kind_from_string(cfg.str("features_b", "is09"));
  const clf::ArchSpec spec = spec_from_config(cfg, kind_a, kind_b);
  check_context_against_test(spec.context, segments, manifest);

  const auto train_segs = clf::segments_for_split(segments, manifest, Split::kTrain);
  const auto valid_segs = clf::segments_for_split(segments, manifest, Split::kValid);
  const auto batch_for = [&](const SegmentTable& segs) {
    if (clf::is_fusion(spec.kind))
      return clf::to_batch<float>(
          clf::make_fusion_samples(segs, cache, kind_a, kind_b, spec.context));
    return clf::to_batch<float>(
        clf::make_context_samples(segs, cache, kind_a, spec.context));
  };

  auto model = clf::build_model<float>(spec, cfg.seed());
  const auto result = clf::train_classifier(model.get(), spec, batch_for(train_segs),
                                            batch_for(valid_segs), train_config(cfg));

  nn::Checkpoint best = result.best;
  best.meta["features"] = to_string(kind_a);
  best.meta["features_b"] = to_string(kind_b);
  best.meta["seed"] = std::to_string(cfg.seed());
  best.meta["version"] = kVersionString;
  nn::save_checkpoint(best, out / "model.ckpt");
  clf::write_curves_csv(result.curves, out / "curves.csv");
  std::printf("train: %s best epoch %d (class weights %.4f/%.4f) -> %s\n",
              to_string(spec.kind).c_str(), result.best_epoch, result.class_weights[0],
              result.class_weights[1], (out / "model.ckpt").string().c_str());
}

void cmd_eval(const RunConfig& cfg) {
  const auto out = cfg.out_dir();
  cfg.write_resolved(out);
  const Manifest manifest = corpus::load_manifest(cfg.require_str("manifest"));
  auto cache = feats::FeatureCache::open(cfg.require_str("cache"));
  const SegmentTable segments =
      corpus::read_segments_csv(std::filesystem::path(cfg.require_str("cache")) /
                                "segments.csv");

  const auto ckpt = nn::load_checkpoint(cfg.require_str("checkpoint"));
  const clf::ArchSpec spec = clf::spec_from_checkpoint(ckpt);
  auto model = clf::model_from_checkpoint(ckpt);
  const auto meta_kind = [&](const char* key, const char* fallback) {
    const auto it = ckpt.meta.find(key);
    return feats::feature_kind_from_string(it == ckpt.meta.end() ? fallback : it->second);
  };
  const FeatureKind kind_a = meta_kind("features", "spk_emb");
  const FeatureKind kind_b = meta_kind("features_b", "is09");

  check_context_against_test(spec.context, segments, manifest);
  const auto test_segs = clf::segments_for_split(segments, manifest, Split::kTest);
  const auto report =
      eval::evaluate_recordings(model.get(), spec, test_segs, cache, kind_a, kind_b);
  eval::write_metrics_csv(report.metrics, out / "metrics.csv");
  if (!report.excluded_recordings.empty()) {
    std::string excluded = "recording_id\n";
    for (const auto& id : report.excluded_recordings) excluded += id + "\n";
    write_text_file(out / "excluded_recordings.csv", excluded);
  }
  std::printf("eval: f1_d=%.4f f1_h=%.4f acc=%.4f over %lld recordings -> %s\n",
              report.metrics.f1_depressed, report.metrics.f1_healthy,
              report.metrics.weighted_accuracy,
              static_cast<long long>(report.metrics.n_recordings),
              (out / "metrics.csv").string().c_str());
}

void cmd_sweep(const RunConfig& cfg) {
  const auto out = cfg.out_dir();
  cfg.write_resolved(out);
  const Manifest manifest = corpus::load_manifest(cfg.require_str("manifest"));
  auto cache = feats::FeatureCache::open(cfg.require_str("cache"));
  const SegmentTable segments =
      corpus::read_segments_csv(std::filesystem::path(cfg.require_str("cache")) /
                                "segments.csv");

  eval::SweepConfig sc;
  sc.arch = clf::arch_from_string(cfg.str("arch", "lstm_d"));
  sc.kind_a = feats::feature_kind_from_string(cfg.str("features", "spk_emb"));
  sc.kind_b = feats::feature_kind_from_string(cfg.str("features_b", "is09"));
  sc.combine = clf::combine_from_string(cfg.str("combine", "hadamard"));
  sc.contexts = cfg.int_list("contexts", {});
  sc.seeds = cfg.u64_list("seeds", {1, 2, 3});
  sc.train = train_config(cfg);
  if (sc.contexts.empty())
    throw ValidationError("sweep: config key 'contexts' is required");

  const auto rows = eval::context_sweep(sc, manifest, segments, cache);
  eval::write_sweep_csv(rows, out / "sweep.csv");
  std::printf("sweep: %zu contexts x %zu seeds -> %s\n", sc.contexts.size(),
              sc.seeds.size(), (out / "sweep.csv").string().c_str());
}

int run_command(const std::string& command, const CliOverrides& overrides) {
  using Handler = std::function<void(const RunConfig&)>;
  static const std::map<std::string, Handler> handlers = {
      {"synth", cmd_synth},       {"features", cmd_features},
      {"ge2e-train", cmd_ge2e_train}, {"embed", cmd_embed},
      {"train", cmd_train},       {"eval", cmd_eval},
      {"sweep", cmd_sweep},
  };
  const auto it = handlers.find(command);
  if (it == handlers.end()) {
    std::fprintf(stderr, "unknown command '%s'\n", command.c_str());
    return 2;
  }
  try {
    it->second(RunConfig::load(overrides));
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: %s\n", command.c_str(), e.what());
    return 1;
  }
}

}  // namespace deprspeech::cli
