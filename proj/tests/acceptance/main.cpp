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
//
// End-to-end acceptance suite. Runs ten numbered criteria against synthetic
// corpora and analytic oracles and prints one [PASS]/[FAIL] line per
// criterion. Exit code is the number of failed criteria.
//
// Usage: acceptance <cli-binary> [scratch-dir]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "deprspeech/clf/train.hpp"
#include "deprspeech/common/io.hpp"
#include "deprspeech/common/parallel.hpp"
#include "deprspeech/corpus/manifest.hpp"
#include "deprspeech/corpus/synth.hpp"
#include "deprspeech/corpus/wav.hpp"
#include "deprspeech/eval/evaluate.hpp"
#include "deprspeech/eval/probe.hpp"
#include "deprspeech/eval/sweep.hpp"
#include "deprspeech/feats/lld.hpp"
#include "deprspeech/feats/mfcc.hpp"
#include "deprspeech/ge2e/extract.hpp"
#include "deprspeech/ge2e/train.hpp"
#include "deprspeech/nn/gradcheck.hpp"
#include "deprspeech/nn/loss.hpp"

namespace fs = std::filesystem;
using namespace deprspeech;
using Clock = std::chrono::steady_clock;

namespace {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Context {
  fs::path scratch;
  std::string cli;

  corpus::Manifest manifest_c;
  corpus::SegmentTable segments_c;
  std::optional<feats::FeatureCache> cache_c;
  std::optional<ge2e::EmbeddingModel<float>> embedder;

  corpus::Manifest manifest_d;
  corpus::SegmentTable segments_d;
  std::optional<feats::FeatureCache> cache_d;

  double lstm_spk_acc = 0.0;  // criterion 7 result, reused by criterion 8
};

double elapsed(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

corpus::SegmentTable compute_segments(const corpus::Manifest& manifest) {
  std::vector<std::vector<corpus::Segment>> slots(manifest.records.size());
  parallel_for(manifest.records.size(), [&](size_t i) {
    corpus::Recording rec = manifest.records[i];
    corpus::load_audio(rec, manifest);
    slots[i] = corpus::segment_recording(manifest, rec);
  });
  corpus::SegmentTable table;
  for (size_t i = 0; i < slots.size(); ++i)
    table[manifest.records[i].id] = std::move(slots[i]);
  return table;
}

void add_is09_features(const corpus::Manifest& manifest,
                       const corpus::SegmentTable& segments,
                       feats::FeatureCache* cache) {
  struct Staged {
    std::string id;
    int index;
    Eigen::VectorXd values;
  };
  std::vector<std::vector<Staged>> slots(manifest.records.size());
  parallel_for(manifest.records.size(), [&](size_t i) {
    corpus::Recording rec = manifest.records[i];
    corpus::load_audio(rec, manifest);
    const int sr = rec.sample_rate;
    for (const auto& seg : segments.at(rec.id)) {
      const auto begin = static_cast<size_t>(seg.start_sec * sr);
      const auto end = std::min(static_cast<size_t>(seg.end_sec * sr), rec.samples.size());
      const std::span<const double> span(rec.samples.data() + begin, end - begin);
      slots[i].push_back(
          {rec.id, seg.index, feats::functionals_is09(feats::is09_lld(span, sr)).values});
    }
  });
  for (const auto& slot : slots)
    for (const auto& s : slot)
      cache->put(s.id, s.index, feats::FeatureKind::kIs09, s.values);
  cache->flush();
}

eval::EmbeddingTable embedding_table(const corpus::Manifest& manifest,
                                     const feats::FeatureCache& cache) {
  std::map<std::string, std::vector<Eigen::VectorXf>> by_speaker;
  for (const auto& [rec_id, seg_idx, kind] : cache.keys()) {
    if (kind != feats::FeatureKind::kSpkEmb) continue;
    by_speaker[manifest.find(rec_id).speaker_id].push_back(
        cache.get(rec_id, seg_idx, kind));
  }
  eval::EmbeddingTable table;
  for (auto& [speaker, embs] : by_speaker) {
    table.speakers.push_back(speaker);
    table.embeddings.push_back(std::move(embs));
  }
  return table;
}

/// Mean same-speaker pairwise cosine minus mean cross-speaker pairwise
/// cosine over the whole table.
double cosine_gap(const eval::EmbeddingTable& table) {
  double intra = 0.0, inter = 0.0;
  int64_t n_intra = 0, n_inter = 0;
  for (size_t a = 0; a < table.embeddings.size(); ++a)
    for (size_t b = a; b < table.embeddings.size(); ++b)
      for (size_t i = 0; i < table.embeddings[a].size(); ++i) {
        const size_t j0 = (a == b) ? i + 1 : 0;
        for (size_t j = j0; j < table.embeddings[b].size(); ++j) {
          const double cos = static_cast<double>(
              table.embeddings[a][i].dot(table.embeddings[b][j]));
          if (a == b) {
            intra += cos;
            ++n_intra;
          } else {
            inter += cos;
            ++n_inter;
          }
        }
      }
  return intra / static_cast<double>(n_intra) - inter / static_cast<double>(n_inter);
}

double mean_balanced_accuracy(const clf::ArchSpec& spec, feats::FeatureKind kind_a,
                              feats::FeatureKind kind_b, const corpus::Manifest& manifest,
                              const corpus::SegmentTable& segments,
                              const feats::FeatureCache& cache,
                              const std::vector<uint64_t>& seeds, int epochs) {
  const auto train_segs = clf::segments_for_split(segments, manifest, corpus::Split::kTrain);
  const auto valid_segs = clf::segments_for_split(segments, manifest, corpus::Split::kValid);
  const auto test_segs = clf::segments_for_split(segments, manifest, corpus::Split::kTest);
  const auto batch_for = [&](const corpus::SegmentTable& segs) {
    if (clf::is_fusion(spec.kind))
      return clf::to_batch<float>(
          clf::make_fusion_samples(segs, cache, kind_a, kind_b, spec.context));
    return clf::to_batch<float>(
        clf::make_context_samples(segs, cache, kind_a, spec.context));
  };
  const auto train_batch = batch_for(train_segs);
  const auto valid_batch = batch_for(valid_segs);

  double total = 0.0;
  for (const uint64_t seed : seeds) {
    auto model = clf::build_model<float>(spec, seed);
    clf::TrainConfig tc;
    tc.epochs = epochs;
    tc.seed = seed;
    const auto trained =
        clf::train_classifier(model.get(), spec, train_batch, valid_batch, tc);
    auto best = clf::model_from_checkpoint(trained.best);
    total += eval::evaluate_recordings(best.get(), spec, test_segs, cache, kind_a, kind_b)
                 .metrics.weighted_accuracy;
  }
  return total / static_cast<double>(seeds.size());
}

int run_cli(const std::string& cli, const std::string& args, const fs::path& log) {
  const std::string cmd = cli + " " + args + " >>" + log.string() + " 2>&1";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

bool files_equal(const fs::path& a, const fs::path& b, std::string* why) {
  if (!fs::exists(a) || !fs::exists(b)) {
    *why = "missing " + (fs::exists(a) ? b : a).string();
    return false;
  }
  if (read_text_file(a) != read_text_file(b)) {
    *why = a.filename().string() + " differs";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 1: gradient fidelity.
// ---------------------------------------------------------------------------

CriterionResult criterion_gradients() {
  CriterionResult res{1, "gradient fidelity (finite differences, f64, 10 seeds)"};
  const auto t0 = Clock::now();
  double worst_fc = 0, worst_conv2 = 0, worst_conv1 = 0, worst_lstm = 0,
         worst_nll = 0, worst_ge2e = 0;

  const auto nll_loss_of = [](const nn::MatX<double>& logits,
                              const std::vector<int>& labels,
                              const std::vector<double>& weights, bool with_grad,
                              nn::MatX<double>* sink) {
    const auto logp = nn::log_softmax(logits);
    const auto nll = nn::weighted_nll(logp, labels, weights);
    if (with_grad) *sink += nn::log_softmax_backward(logp, nll.grad_log_probs);
    return nll.loss;
  };

  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed * 31 + 7);
    const auto rand_mat = [&rng](int r, int c) {
      nn::MatX<double> m(r, c);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = rng.normal();
      return m;
    };
    const auto rand_labels = [&rng](int n, int k) {
      std::vector<int> y(static_cast<size_t>(n));
      for (auto& v : y) v = static_cast<int>(rng.below(static_cast<uint64_t>(k)));
      return y;
    };

    {  // fully-connected
      nn::Linear<double> fc(5, 4, rng);
      nn::MatX<double> x = rand_mat(3, 5);
      nn::MatX<double> gx = nn::MatX<double>::Zero(3, 5);
      const auto labels = rand_labels(3, 4);
      const std::vector<double> w = {1.0, 2.0, 0.5, 1.5};
      auto params = fc.params("fc");
      params.push_back({"x", &x, &gx});
      const auto eval_fn = [&](bool g) {
        nn::MatX<double> glogits = nn::MatX<double>::Zero(3, 4);
        const double loss = nll_loss_of(fc.forward(x), labels, w, g, &glogits);
        if (g) gx += fc.backward(x, glogits);
        return loss;
      };
      worst_fc = std::max(worst_fc, nn::grad_check(params, eval_fn, 20, seed).max_rel_err);
    }
    {  // full-width kernel over time (first conv layer form)
      nn::ConvTime<double> conv(3, 6, 2, rng);
      nn::MatX<double> x = rand_mat(9, 6);
      nn::MatX<double> gx = nn::MatX<double>::Zero(9, 6);
      const auto labels = rand_labels(7, 2);
      const std::vector<double> w = {1.0, 1.0};
      auto params = conv.params("conv2d");
      params.push_back({"x", &x, &gx});
      const auto eval_fn = [&](bool g) {
        nn::MatX<double> gy = nn::MatX<double>::Zero(7, 2);
        const double loss = nll_loss_of(conv.forward(x), labels, w, g, &gy);
        if (g) gx += conv.backward(x, gy);
        return loss;
      };
      worst_conv2 =
          std::max(worst_conv2, nn::grad_check(params, eval_fn, 20, seed).max_rel_err);
    }
    {  // channel-to-channel kernel (second conv layer form)
      nn::ConvTime<double> conv(4, 3, 3, rng);
      nn::MatX<double> x = rand_mat(8, 3);
      nn::MatX<double> gx = nn::MatX<double>::Zero(8, 3);
      const auto labels = rand_labels(5, 3);
      const std::vector<double> w = {1.0, 1.0, 1.0};
      auto params = conv.params("conv1d");
      params.push_back({"x", &x, &gx});
      const auto eval_fn = [&](bool g) {
        nn::MatX<double> gy = nn::MatX<double>::Zero(5, 3);
        const double loss = nll_loss_of(conv.forward(x), labels, w, g, &gy);
        if (g) gx += conv.backward(x, gy);
        return loss;
      };
      worst_conv1 =
          std::max(worst_conv1, nn::grad_check(params, eval_fn, 20, seed).max_rel_err);
    }
    {  // LSTM through time
      nn::LstmLayer<double> cell(3, 2, rng);
      std::vector<nn::MatX<double>> xs;
      for (int t = 0; t < 4; ++t) xs.push_back(rand_mat(2, 3));
      const auto labels = rand_labels(2, 2);
      const std::vector<double> w = {1.0, 1.0};
      const auto eval_fn = [&](bool g) {
        typename nn::LstmLayer<double>::Cache cache;
        const auto hs = cell.forward(xs, g ? &cache : nullptr);
        nn::MatX<double> pooled = nn::MatX<double>::Zero(2, 2);
        for (const auto& h : hs) pooled += h;
        nn::MatX<double> gp = nn::MatX<double>::Zero(2, 2);
        const double loss = nll_loss_of(pooled, labels, w, g, &gp);
        if (g) cell.backward(cache, std::vector<nn::MatX<double>>(hs.size(), gp));
        return loss;
      };
      worst_lstm =
          std::max(worst_lstm, nn::grad_check(cell.params("lstm"), eval_fn, 20, seed)
                                   .max_rel_err);
    }
    {  // softmax + weighted NLL as a layer of its own
      nn::MatX<double> logits = rand_mat(4, 3);
      nn::MatX<double> glogits = nn::MatX<double>::Zero(4, 3);
      const auto labels = rand_labels(4, 3);
      const std::vector<double> w = {0.7, 1.3, 2.0};
      const std::vector<nn::ParamRef<double>> params = {{"logits", &logits, &glogits}};
      const auto eval_fn = [&](bool g) {
        return nll_loss_of(logits, labels, w, g, &glogits);
      };
      worst_nll =
          std::max(worst_nll, nn::grad_check(params, eval_fn, 12, seed).max_rel_err);
    }
    {  // embedding loss
      const int n = 3, m = 2, p = 5;
      nn::MatX<double> emb = rand_mat(n * m, p);
      for (int r = 0; r < n * m; ++r) emb.row(r).normalize();
      nn::MatX<double> gemb = nn::MatX<double>::Zero(n * m, p);
      nn::MatX<double> w(1, 1), b(1, 1), gw(1, 1), gb(1, 1);
      w(0, 0) = 4.0 + rng.uniform(0.0, 4.0);
      b(0, 0) = -2.0 + rng.uniform(0.0, 2.0);
      const std::vector<nn::ParamRef<double>> params = {
          {"emb", &emb, &gemb}, {"w", &w, &gw}, {"b", &b, &gb}};
      const auto eval_fn = [&](bool g) {
        ge2e::LossParams lp;
        lp.w = w(0, 0);
        lp.b = b(0, 0);
        const auto result = ge2e::ge2e_loss(emb, n, m, lp);
        if (g) {
          gemb += result.grad_emb;
          gw(0, 0) += result.grad_w;
          gb(0, 0) += result.grad_b;
        }
        return result.loss;
      };
      worst_ge2e =
          std::max(worst_ge2e, nn::grad_check(params, eval_fn, 16, seed).max_rel_err);
    }
  }

  res.seconds = elapsed(t0);
  const bool strict_ok = worst_fc < 1e-5 && worst_conv2 < 1e-5 && worst_conv1 < 1e-5;
  const bool loose_ok = worst_lstm < 1e-4 && worst_nll < 1e-4 && worst_ge2e < 1e-4;
  res.pass = strict_ok && loose_ok && res.seconds < 120.0;
  std::ostringstream ss;
  ss << "max rel err: fc " << worst_fc << ", conv2d " << worst_conv2 << ", conv1d "
     << worst_conv1 << ", lstm " << worst_lstm << ", softmax+nll " << worst_nll
     << ", embedding loss " << worst_ge2e;
  res.detail = ss.str();
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 3: embedding-space geometry after toy-scale training.
// ---------------------------------------------------------------------------

CriterionResult criterion_ge2e_geometry(Context& ctx) {
  CriterionResult res{3, "speaker-embedding geometry on the 20-speaker corpus"};
  const auto t0 = Clock::now();

  corpus::SynthSpec spec;
  spec.n_speakers = 20;
  spec.recordings_per_speaker = 3;
  spec.recording_dur = 60.0;
  spec.class_effect_size = 1.0;
  ctx.manifest_c = corpus::generate_synthetic_corpus(spec, 101, ctx.scratch / "corpus_c");
  ctx.segments_c = compute_segments(ctx.manifest_c);

  const auto frontend = feats::embedding_frontend_spec();
  const auto train_data =
      ge2e::build_dataset(ctx.manifest_c, corpus::Split::kTrain, frontend);
  const auto holdout =
      ge2e::build_dataset(ctx.manifest_c, corpus::Split::kValid, frontend);

  ge2e::TrainConfig tc;
  tc.steps = 350;  // within the 500-step allowance
  tc.seed = 11;
  Rng init_rng(derive_seed(tc.seed, "ge2e/init"));
  ctx.embedder.emplace(frontend.n_mfcc, init_rng);
  ge2e::LossParams lp;
  const auto trained = ge2e::train(train_data, holdout, &*ctx.embedder, &lp, tc);

  ctx.cache_c.emplace(feats::FeatureCache::open(ctx.scratch / "cache_c"));
  const auto report = ge2e::extract_segment_embeddings(ctx.manifest_c, ctx.segments_c,
                                                       *ctx.embedder, &*ctx.cache_c);
  ctx.cache_c->flush();

  const auto table = embedding_table(ctx.manifest_c, *ctx.cache_c);
  const double gap = cosine_gap(table);
  eval::ProbeConfig probe_cfg;
  probe_cfg.seed = 17;
  const auto probe = eval::speaker_probe(table, probe_cfg);

  res.seconds = elapsed(t0);
  res.pass = gap >= 0.2 && probe.eer <= 0.05 && res.seconds < 600.0 &&
             trained.holdout_after < trained.holdout_before && report.n_ok > 0;
  res.detail = "cosine gap " + fmt(gap) + " (>= 0.2), probe eer " + fmt(probe.eer) +
               " (<= 0.05), holdout loss " + fmt(trained.holdout_before, 2) + " -> " +
               fmt(trained.holdout_after, 2) + ", " + std::to_string(report.n_ok) +
               " embeddings";
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 7: end-to-end separability.
// ---------------------------------------------------------------------------

CriterionResult criterion_separability(Context& ctx) {
  CriterionResult res{7, "recording-level separability at effect size 1.0"};
  const auto t0 = Clock::now();

  corpus::SynthSpec spec;
  spec.n_speakers = 32;
  spec.recordings_per_speaker = 3;
  spec.recording_dur = 85.0;  // 17 segments per recording
  spec.class_effect_size = 1.0;
  spec.train_frac = 0.5;
  spec.valid_frac = 0.2;
  ctx.manifest_d = corpus::generate_synthetic_corpus(spec, 202, ctx.scratch / "corpus_d");
  ctx.segments_d = compute_segments(ctx.manifest_d);

  ctx.cache_d.emplace(feats::FeatureCache::open(ctx.scratch / "cache_d"));
  ge2e::extract_segment_embeddings(ctx.manifest_d, ctx.segments_d, *ctx.embedder,
                                   &*ctx.cache_d);
  ctx.cache_d->flush();

  clf::ArchSpec arch;
  arch.kind = clf::Arch::kLstmD;
  arch.input_dim = 256;
  arch.context = 16;
  ctx.lstm_spk_acc = mean_balanced_accuracy(arch, feats::FeatureKind::kSpkEmb,
                                            feats::FeatureKind::kIs09, ctx.manifest_d,
                                            ctx.segments_d, *ctx.cache_d, {1, 2, 3}, 400);

  res.seconds = elapsed(t0);
  res.pass = ctx.lstm_spk_acc >= 0.90 && res.seconds < 900.0;
  res.detail = "lstm_d on speaker embeddings, context 16: balanced accuracy " +
               fmt(ctx.lstm_spk_acc) + " (>= 0.90, 3-seed mean)";
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 8: fusion does not fall behind the best single feature.
// ---------------------------------------------------------------------------

CriterionResult criterion_fusion(Context& ctx) {
  CriterionResult res{8, "fusion accuracy vs single-feature baselines"};
  const auto t0 = Clock::now();

  add_is09_features(ctx.manifest_d, ctx.segments_d, &*ctx.cache_d);

  clf::ArchSpec lstm_is09;
  lstm_is09.kind = clf::Arch::kLstmD;
  lstm_is09.input_dim = 384;
  lstm_is09.context = 16;
  const double acc_is09 = mean_balanced_accuracy(
      lstm_is09, feats::FeatureKind::kIs09, feats::FeatureKind::kSpkEmb, ctx.manifest_d,
      ctx.segments_d, *ctx.cache_d, {1, 2, 3}, 400);

  clf::ArchSpec fusion;
  fusion.kind = clf::Arch::kCeDl;
  fusion.input_dim = 256;
  fusion.input_dim_b = 384;
  fusion.context = 16;
  fusion.combine = clf::CombineMode::kHadamard;
  const double acc_fused = mean_balanced_accuracy(
      fusion, feats::FeatureKind::kSpkEmb, feats::FeatureKind::kIs09, ctx.manifest_d,
      ctx.segments_d, *ctx.cache_d, {1, 2, 3}, 400);

  const double best_single = std::max(ctx.lstm_spk_acc, acc_is09);
  res.seconds = elapsed(t0);
  res.pass = acc_fused >= best_single - 0.01;
  res.detail = "ce_dl(spk_emb, is09) " + fmt(acc_fused) + " vs best single " +
               fmt(best_single) + " (spk " + fmt(ctx.lstm_spk_acc) + ", is09 " +
               fmt(acc_is09) + "); margin -0.01";
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 9: temporal-context trend and sweep validation.
// ---------------------------------------------------------------------------

CriterionResult criterion_context_trend(Context& ctx) {
  CriterionResult res{9, "context trend and sweep validation"};
  const auto t0 = Clock::now();

  eval::SweepConfig sc;
  sc.arch = clf::Arch::kLstmD;
  sc.kind_a = feats::FeatureKind::kSpkEmb;
  sc.contexts = {4, 8, 12, 16};
  sc.seeds = {1, 2, 3};
  sc.train.epochs = 400;
  const auto rows = eval::context_sweep(sc, ctx.manifest_d, ctx.segments_d, *ctx.cache_d);
  eval::write_sweep_csv(rows, ctx.scratch / "sweep.csv");

  const double acc4 = rows.front().acc;
  const double acc16 = rows.back().acc;

  bool rejected = false;
  try {
    eval::SweepConfig bad = sc;
    bad.contexts = {4, 18};  // 18 > the 17-segment test recordings
    eval::context_sweep(bad, ctx.manifest_d, ctx.segments_d, *ctx.cache_d);
  } catch (const ValidationError&) {
    rejected = true;
  }

  res.seconds = elapsed(t0);
  res.pass = rows.size() == 4 && acc16 >= acc4 - 0.02 && rejected;
  res.detail = "acc(context 4) " + fmt(acc4) + ", acc(context 16) " + fmt(acc16) +
               " (allowed drop 0.02); oversized context rejected: " +
               (rejected ? "yes" : "no");
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 2: embedding contract over everything extracted above.
// ---------------------------------------------------------------------------

CriterionResult criterion_embedding_contract(Context& ctx) {
  CriterionResult res{2, "embedding dimension and unit-norm contract"};
  std::vector<Eigen::VectorXf> all;
  for (const auto* cache : {&*ctx.cache_c, &*ctx.cache_d})
    for (const auto& [rec_id, seg_idx, kind] : cache->keys())
      if (kind == feats::FeatureKind::kSpkEmb)
        all.push_back(cache->get(rec_id, seg_idx, kind));

  const auto t0 = Clock::now();
  size_t bad_dim = 0, bad_norm = 0;
  for (const auto& e : all) {
    if (e.size() != 256) ++bad_dim;
    double sumsq = 0.0;
    for (Eigen::Index i = 0; i < e.size(); ++i)
      sumsq += static_cast<double>(e(i)) * static_cast<double>(e(i));
    if (std::abs(std::sqrt(sumsq) - 1.0) >= 1e-6) ++bad_norm;
  }
  res.seconds = elapsed(t0);  // the validation pass itself is the timed part
  res.pass = all.size() >= 1000 && bad_dim == 0 && bad_norm == 0 && res.seconds < 1.0;
  res.detail = std::to_string(all.size()) + " embeddings, " + std::to_string(bad_dim) +
               " with wrong dim, " + std::to_string(bad_norm) +
               " off unit norm; checked in " + fmt(res.seconds, 3) + " s";
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 4: feature dimensionality and functional closed forms.
// ---------------------------------------------------------------------------

CriterionResult criterion_feature_dims() {
  CriterionResult res{4, "feature dimensionality and functional closed forms"};
  const auto t0 = Clock::now();
  std::vector<std::string> problems;

  Rng rng(5);
  std::vector<double> audio(16000);
  for (double& v : audio) v = 0.3 * rng.normal();
  if (feats::mfcc(audio, 16000, feats::embedding_frontend_spec()).dims() != 40)
    problems.push_back("mfcc dim != 40");
  if (feats::functionals_is09(feats::is09_lld(audio, 16000)).dim() != 384)
    problems.push_back("is09 functionals dim != 384");
  const auto stack = feats::lld_stack(audio, 16000);
  if (stack.dims() != 74) problems.push_back("lld stack dim != 74");
  if (feats::functionals_stats6(stack).dim() != 444)
    problems.push_back("stats6 dim != 444 = 74 x 6");

  const auto close = [](double a, double b) { return std::abs(a - b) < 1e-12; };
  Eigen::VectorXd constant = Eigen::VectorXd::Constant(4, 2.0);
  const auto fc = feats::channel_functionals(constant);
  if (!close(fc.mean, 2.0) || !close(fc.stddev, 0.0) || !close(fc.range, 0.0) ||
      !close(fc.lr_slope, 0.0) || !close(fc.lr_mse, 0.0) || !close(fc.skewness, 0.0) ||
      !close(fc.kurtosis, 0.0))
    problems.push_back("constant-channel functionals off closed form");
  Eigen::VectorXd ramp(4);
  ramp << 0, 1, 2, 3;
  const auto fr = feats::channel_functionals(ramp);
  if (!close(fr.lr_slope, 1.0) || !close(fr.lr_offset, 0.0) || !close(fr.lr_mse, 0.0) ||
      !close(fr.rel_pos_max, 1.0))
    problems.push_back("linear-channel regression off closed form");
  Eigen::VectorXd impulse(4);
  impulse << 0, 0, 0, 1;
  const auto fi = feats::channel_functionals(impulse);
  if (!close(fi.mean, 0.25) || !close(fi.stddev, std::sqrt(3.0 / 16.0)) ||
      !close(fi.skewness, 2.0 / std::sqrt(3.0)) || !close(fi.kurtosis, 7.0 / 3.0))
    problems.push_back("impulse-channel moments off closed form");

  res.seconds = elapsed(t0);
  res.pass = problems.empty();
  res.detail = problems.empty()
                   ? "40 / 384 / 444 = 74 x 6; constant, linear and impulse "
                     "channels match closed forms to 1e-12"
                   : problems.front();
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 5: architecture conformance.
// ---------------------------------------------------------------------------

CriterionResult criterion_architecture() {
  CriterionResult res{5, "architecture parameter counts and shape oracle"};
  const auto t0 = Clock::now();
  std::vector<std::string> problems;
  const auto lstm_p = [](int in, int h) { return 4 * h * (in + h) + 4 * h; };

  for (const int d : {256, 384, 444}) {
    clf::ArchSpec dnn{clf::Arch::kDnnD, d, 0, 1, clf::CombineMode::kHadamard};
    const int64_t dnn_expected =
        (d * 128 + 128) + (128 * 64 + 64) + (64 * 128 + 128) + (128 * 2 + 2);
    if (clf::build_model<float>(dnn, 1)->n_params() != dnn_expected)
      problems.push_back("dnn_d params off at D=" + std::to_string(d));

    clf::ArchSpec lstm{clf::Arch::kLstmD, d, 0, 16, clf::CombineMode::kHadamard};
    const int64_t lstm_expected =
        lstm_p(d, 128) + lstm_p(128, 128) + (128 * 100 + 100) + (100 * 2 + 2);
    if (clf::build_model<float>(lstm, 1)->n_params() != lstm_expected)
      problems.push_back("lstm_d params off at D=" + std::to_string(d));
  }

  for (const int context : {4, 8, 16, 20}) {
    const int d = 256;
    const int padded = std::max(context, 8);
    clf::ArchSpec cnn{clf::Arch::kCnnD, d, 0, context, clf::CombineMode::kHadamard};
    int64_t conv = 0, concat = 0;
    for (const int k : {3, 4, 5}) {
      conv += k * d * 50 + 50 + 4 * 50 * 50 + 50;
      concat += (padded - k - 2) * 50;
    }
    const int64_t cnn_expected = conv + (concat * 100 + 100) + (100 * 2 + 2);
    auto model = clf::build_model<float>(cnn, 2);
    if (model->n_params() != cnn_expected)
      problems.push_back("cnn_d params off at context " + std::to_string(context));

    // Shape oracle: a forward pass yields a 2-class row per sample and the
    // padding path fires exactly for contexts under 8.
    clf::SampleBatch<float> batch;
    batch.context = context;
    Rng rng(3);
    for (int s = 0; s < 2; ++s) {
      nn::MatX<float> w(context, d);
      for (int t = 0; t < context; ++t)
        for (int c = 0; c < d; ++c) w(t, c) = static_cast<float>(rng.normal());
      batch.windows_a.push_back(std::move(w));
      batch.labels.push_back(s % 2);
    }
    const auto logp = model->forward(batch, false, nullptr);
    if (logp.rows() != 2 || logp.cols() != 2)
      problems.push_back("cnn_d output shape off at context " + std::to_string(context));
    const auto pad_events = dynamic_cast<clf::CnnD<float>*>(model.get())->pad_events();
    if ((context < 8) != (pad_events > 0))
      problems.push_back("cnn_d padding path wrong at context " + std::to_string(context));

    clf::ArchSpec ce{clf::Arch::kCeDl, d, 384, context, clf::CombineMode::kHadamard};
    const int64_t ce_expected = lstm_p(d, 128) + lstm_p(128, 128) + lstm_p(384, 128) +
                                lstm_p(128, 128) + 2 * (128 * 100 + 100) +
                                (100 * 2 + 2);
    if (clf::build_model<float>(ce, 4)->n_params() != ce_expected)
      problems.push_back("ce_dl params off at context " + std::to_string(context));
  }

  res.seconds = elapsed(t0);
  res.pass = problems.empty();
  res.detail = problems.empty()
                   ? "dnn_d/cnn_d/lstm_d/ce_dl match closed-form counts; shape "
                     "oracle holds at contexts 4, 8, 16, 20"
                   : problems.front();
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 6: decision logic against enumeration oracles.
// ---------------------------------------------------------------------------

CriterionResult criterion_decision_logic() {
  CriterionResult res{6, "majority vote, metrics and EER against oracles"};
  const auto t0 = Clock::now();
  std::vector<std::string> problems;
  using corpus::Label;

  for (int n = 1; n <= 7 && problems.empty(); ++n) {
    for (uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::vector<Label> decisions;
      int dep = 0;
      for (int i = 0; i < n; ++i) {
        const bool d = (bits >> i) & 1;
        decisions.push_back(d ? Label::kDepressed : Label::kHealthy);
        dep += d ? 1 : 0;
      }
      const Label expect = dep >= n - dep ? Label::kDepressed : Label::kHealthy;
      if (eval::majority_vote(decisions) != expect) {
        problems.push_back("majority vote off at n=" + std::to_string(n));
        break;
      }
    }
  }

  {
    const eval::MetricReport r = eval::metrics_from_confusion({3, 1, 4, 2});
    if (std::abs(r.f1_depressed - 2.0 / 3.0) > 1e-12 ||
        std::abs(r.weighted_accuracy - 0.7) > 1e-12)
      problems.push_back("hand confusion matrix off");
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(25));
      std::vector<Label> pred, truth;
      int64_t tp = 0, fp = 0, tn = 0, fn = 0;
      for (int i = 0; i < n; ++i) {
        const bool p = rng.below(2), t = rng.below(2);
        pred.push_back(p ? Label::kDepressed : Label::kHealthy);
        truth.push_back(t ? Label::kDepressed : Label::kHealthy);
        tp += p && t;
        fp += p && !t;
        tn += !p && !t;
        fn += !p && t;
      }
      const auto direct = eval::compute_metrics(pred, truth);
      const auto via_cm = eval::metrics_from_confusion({tp, fp, tn, fn});
      if (std::abs(direct.f1_depressed - via_cm.f1_depressed) > 1e-12 ||
          std::abs(direct.f1_healthy - via_cm.f1_healthy) > 1e-12 ||
          std::abs(direct.weighted_accuracy - via_cm.weighted_accuracy) > 1e-12) {
        problems.push_back("metrics disagree with the confusion-count oracle");
        break;
      }
    }
  }

  {
    Rng rng(10);
    for (int trial = 0; trial < 50; ++trial) {
      eval::ScoreTrials trials;
      const int ng = 2 + static_cast<int>(rng.below(30));
      const int ni = 2 + static_cast<int>(rng.below(30));
      const double sep = rng.uniform(-0.5, 2.0);
      for (int i = 0; i < ng; ++i) trials.genuine.push_back(rng.normal() + sep);
      for (int i = 0; i < ni; ++i) trials.impostor.push_back(rng.normal());

      // Longhand enumeration of the same mathematical definition.
      std::vector<double> ts = trials.genuine;
      ts.insert(ts.end(), trials.impostor.begin(), trials.impostor.end());
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      std::vector<std::pair<double, double>> pts;
      for (size_t k = 0; k <= ts.size(); ++k) {
        int fa = 0, fr = 0;
        for (const double s : trials.impostor)
          if (k < ts.size() ? s >= ts[k] : s > ts.back()) ++fa;
        for (const double s : trials.genuine)
          if (k < ts.size() ? s < ts[k] : s <= ts.back()) ++fr;
        pts.emplace_back(static_cast<double>(fa) / trials.impostor.size(),
                         static_cast<double>(fr) / trials.genuine.size());
      }
      double oracle = pts.back().first;
      for (size_t k = 0; k < pts.size(); ++k) {
        const double diff = pts[k].first - pts[k].second;
        if (diff == 0.0) {
          oracle = pts[k].first;
          break;
        }
        if (diff < 0.0) {
          if (k == 0) {
            oracle = pts[k].first;
            break;
          }
          const double d0 = pts[k - 1].first - pts[k - 1].second;
          oracle = pts[k - 1].first +
                   d0 / (d0 - diff) * (pts[k].first - pts[k - 1].first);
          break;
        }
      }
      if (std::abs(eval::compute_eer(trials) - oracle) > 1e-12) {
        problems.push_back("eer mismatch on trial set " + std::to_string(trial));
        break;
      }
    }
  }

  res.seconds = elapsed(t0);
  res.pass = problems.empty();
  res.detail = problems.empty()
                   ? "vote exhaustive to length 7; metrics to 1e-12; EER matches "
                     "enumeration on 50 random trial sets"
                   : problems.front();
  return res;
}

// ---------------------------------------------------------------------------
// Criterion 10: byte-identical reruns of every command.
// ---------------------------------------------------------------------------

CriterionResult criterion_determinism(Context& ctx) {
  CriterionResult res{10, "byte-identical seeded reruns of every command"};
  const auto t0 = Clock::now();
  const fs::path root = ctx.scratch / "determinism";
  fs::create_directories(root);
  const fs::path log = root / "cli.log";
  std::string why;

  const auto corpus_cfg = root / "synth.json";
  write_text_file(corpus_cfg,
                  R"({"n_speakers": 6, "recordings_per_speaker": 1,
                      "recording_dur": 12.0, "train_frac": 0.34,
                      "valid_frac": 0.33})");

  bool ok = true;
  const auto expect_run = [&](const std::string& args) {
    if (!ok) return;
    if (run_cli(ctx.cli, args, log) != 0) {
      ok = false;
      why = "command failed: " + args;
    }
  };
  const auto expect_same = [&](const fs::path& a, const fs::path& b) {
    if (!ok) return;
    std::string local;
    if (!files_equal(a, b, &local)) {
      ok = false;
      why = local;
    }
  };

  for (const char* run : {"a", "b"}) {
    const fs::path r = root / run;
    const std::string tag = run;
    expect_run("synth --config " + corpus_cfg.string() + " --seed 5 --out " +
               (r / "corpus").string());
    write_text_file(root / ("feat_" + tag + ".json"),
                    "{\"manifest\": \"" + (r / "corpus" / "manifest.jsonl").string() +
                        "\"}");
    expect_run("features --config " + (root / ("feat_" + tag + ".json")).string() +
               " --features is09 --seed 5 --out " + (r / "cache").string());
    write_text_file(root / ("ge2e_" + tag + ".json"),
                    "{\"manifest\": \"" + (r / "corpus" / "manifest.jsonl").string() +
                        "\", \"steps\": 2, \"n_per_batch\": 2, \"m_per_batch\": 2}");
    expect_run("ge2e-train --config " + (root / ("ge2e_" + tag + ".json")).string() +
               " --seed 5 --out " + (r / "ge2e").string());
    write_text_file(root / ("embed_" + tag + ".json"),
                    "{\"manifest\": \"" + (r / "corpus" / "manifest.jsonl").string() +
                        "\", \"checkpoint\": \"" + (r / "ge2e" / "ge2e.ckpt").string() +
                        "\"}");
    expect_run("embed --config " + (root / ("embed_" + tag + ".json")).string() +
               " --seed 5 --out " + (r / "emb").string());
    write_text_file(root / ("train_" + tag + ".json"),
                    "{\"manifest\": \"" + (r / "corpus" / "manifest.jsonl").string() +
                        "\", \"cache\": \"" + (r / "emb").string() +
                        "\", \"epochs\": 2}");
    expect_run("train --config " + (root / ("train_" + tag + ".json")).string() +
               " --arch dnn_d --features spk_emb --context 1 --seed 5 --out " +
               (r / "clf").string());
    write_text_file(root / ("eval_" + tag + ".json"),
                    "{\"manifest\": \"" + (r / "corpus" / "manifest.jsonl").string() +
                        "\", \"cache\": \"" + (r / "emb").string() +
                        "\", \"checkpoint\": \"" + (r / "clf" / "model.ckpt").string() +
                        "\"}");
    expect_run("eval --config " + (root / ("eval_" + tag + ".json")).string() +
               " --seed 5 --out " + (r / "ev").string());
    write_text_file(root / ("sweep_" + tag + ".json"),
                    "{\"manifest\": \"" + (r / "corpus" / "manifest.jsonl").string() +
                        "\", \"cache\": \"" + (r / "emb").string() +
                        "\", \"arch\": \"lstm_d\", \"features\": \"spk_emb\", "
                        "\"contexts\": [1, 2], \"seeds\": [1], \"epochs\": 2}");
    expect_run("sweep --config " + (root / ("sweep_" + tag + ".json")).string() +
               " --seed 5 --out " + (r / "sw").string());
  }

  const fs::path a = root / "a", b = root / "b";
  expect_same(a / "corpus" / "manifest.jsonl", b / "corpus" / "manifest.jsonl");
  expect_same(a / "corpus" / "ground_truth.csv", b / "corpus" / "ground_truth.csv");
  expect_same(a / "corpus" / "wav" / "spk003_r00.wav",
              b / "corpus" / "wav" / "spk003_r00.wav");
  expect_same(a / "cache" / "vectors.bin", b / "cache" / "vectors.bin");
  expect_same(a / "cache" / "index.csv", b / "cache" / "index.csv");
  expect_same(a / "cache" / "segments.csv", b / "cache" / "segments.csv");
  expect_same(a / "ge2e" / "ge2e.ckpt", b / "ge2e" / "ge2e.ckpt");
  expect_same(a / "ge2e" / "loss_curve.csv", b / "ge2e" / "loss_curve.csv");
  expect_same(a / "emb" / "vectors.bin", b / "emb" / "vectors.bin");
  expect_same(a / "emb" / "extraction_report.csv", b / "emb" / "extraction_report.csv");
  expect_same(a / "clf" / "model.ckpt", b / "clf" / "model.ckpt");
  expect_same(a / "clf" / "curves.csv", b / "clf" / "curves.csv");
  expect_same(a / "ev" / "metrics.csv", b / "ev" / "metrics.csv");
  expect_same(a / "sw" / "sweep.csv", b / "sw" / "sweep.csv");

  res.seconds = elapsed(t0);
  res.pass = ok;
  res.detail = ok ? "synth, features, ge2e-train, embed, train, eval, sweep all "
                    "byte-identical across seeded reruns"
                  : why;
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <cli-binary> [scratch-dir]\n");
    return 64;
  }
  Context ctx;
  ctx.cli = argv[1];
  ctx.scratch = argc > 2 ? fs::path(argv[2]) : fs::path("acceptance_scratch");
  fs::remove_all(ctx.scratch);
  fs::create_directories(ctx.scratch);

  std::vector<CriterionResult> results;
  const auto run = [&](int id, const char* label,
                       const std::function<CriterionResult()>& fn) {
    std::fprintf(stderr, "running criterion %d (%s)...\n", id, label);
    try {
      results.push_back(fn());
    } catch (const std::exception& e) {
      CriterionResult res;
      res.id = id;
      res.name = label;
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
      results.push_back(res);
    }
  };

  run(1, "gradients", [] { return criterion_gradients(); });
  run(3, "embedding geometry", [&] { return criterion_ge2e_geometry(ctx); });
  run(7, "separability", [&] { return criterion_separability(ctx); });
  run(8, "fusion", [&] { return criterion_fusion(ctx); });
  run(9, "context trend", [&] { return criterion_context_trend(ctx); });
  run(2, "embedding contract", [&] { return criterion_embedding_contract(ctx); });
  run(4, "feature dims", [] { return criterion_feature_dims(); });
  run(5, "architecture", [] { return criterion_architecture(); });
  run(6, "decision logic", [] { return criterion_decision_logic(); });
  run(10, "determinism", [&] { return criterion_determinism(ctx); });

  std::sort(results.begin(), results.end(),
            [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] criterion %d: %s — %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str(), r.seconds);
    if (!r.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed;
}
