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

#include "deprspeech/clf/train.hpp"

#include <numeric>

#include "deprspeech/common/io.hpp"
#include "deprspeech/nn/loss.hpp"

namespace deprspeech::clf {

namespace {

SampleBatch<float> subset(const SampleBatch<float>& all, const std::vector<size_t>& idx,
                          size_t begin, size_t end) {
  SampleBatch<float> out;
  out.context = all.context;
  const bool fused = !all.windows_b.empty();
  for (size_t i = begin; i < end; ++i) {
    out.windows_a.push_back(all.windows_a[idx[i]]);
    if (fused) out.windows_b.push_back(all.windows_b[idx[i]]);
    out.labels.push_back(all.labels[idx[i]]);
  }
  return out;
}

double window_accuracy(const nn::MatX<float>& log_probs, const std::vector<int>& labels) {
  int correct = 0;
  for (Eigen::Index r = 0; r < log_probs.rows(); ++r) {
    Eigen::Index argmax = 0;
    log_probs.row(r).maxCoeff(&argmax);
    if (static_cast<int>(argmax) == labels[static_cast<size_t>(r)]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(log_probs.rows());
}

}  // namespace

nn::MatX<float> predict_log_probs(Model<float>* model, const SampleBatch<float>& samples) {
  return model->forward(samples, /*train=*/false, nullptr);
}

TrainResult train_classifier(Model<float>* model, const ArchSpec& spec,
                             const SampleBatch<float>& train_samples,
                             const SampleBatch<float>& valid_samples,
                             const TrainConfig& cfg) {
  if (train_samples.size() == 0 || valid_samples.size() == 0)
    throw ValidationError("train_classifier: empty train or validation sample list");

  TrainResult result;
  result.class_weights = nn::inverse_frequency_weights(train_samples.labels, kClasses);

  const auto params = model->params();
  nn::Adam<float> opt(cfg.adam);
  opt.init(params);

  Rng shuffle_rng(derive_seed(cfg.seed, "clf/shuffle"));
  Rng dropout_rng(derive_seed(cfg.seed, "clf/dropout"));

  double best_acc = -1.0;
  double best_loss = 0.0;
  const auto n = static_cast<size_t>(train_samples.size());
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double epoch_loss = 0.0;
    size_t seen = 0;
    for (size_t begin = 0; begin < n; begin += static_cast<size_t>(cfg.batch_size)) {
      const size_t end = std::min(n, begin + static_cast<size_t>(cfg.batch_size));
      const SampleBatch<float> batch = subset(train_samples, order, begin, end);
      const nn::MatX<float> log_probs = model->forward(batch, /*train=*/true, &dropout_rng);
      const auto nll = nn::weighted_nll(log_probs, batch.labels, result.class_weights);
      model->zero_grad();
      model->backward(nll.grad_log_probs);
      opt.step(params);
      epoch_loss += nll.loss * static_cast<double>(end - begin);
      seen += end - begin;
    }

    const nn::MatX<float> valid_logp = predict_log_probs(model, valid_samples);
    const auto valid_nll =
        nn::weighted_nll(valid_logp, valid_samples.labels, result.class_weights);
    EpochRow row;
    row.epoch = epoch;
    row.train_loss = epoch_loss / static_cast<double>(seen);
    row.valid_loss = valid_nll.loss;
    row.valid_acc = window_accuracy(valid_logp, valid_samples.labels);
    result.curves.push_back(row);

    // Selection on validation window accuracy; ties resolve to the lower
    // validation loss (small validation splits produce many tied epochs).
    if (row.valid_acc > best_acc ||
        (row.valid_acc == best_acc && row.valid_loss < best_loss)) {
      best_acc = row.valid_acc;
      best_loss = row.valid_loss;
      result.best_epoch = epoch;
      result.best = make_checkpoint(model, spec, {{"epoch", std::to_string(epoch)}});
    }
  }
  return result;
}

void write_curves_csv(const std::vector<EpochRow>& curves,
                      const std::filesystem::path& path) {
  std::string out = "epoch,train_loss,valid_loss,valid_acc\n";
  for (const auto& row : curves) {
    out += std::to_string(row.epoch);
    out += ',';
    out += format_real(row.train_loss);
    out += ',';
    out += format_real(row.valid_loss);
    out += ',';
    out += format_real(row.valid_acc);
    out += '\n';
  }
  write_text_file(path, out);
}

nn::Checkpoint make_checkpoint(Model<float>* model, const ArchSpec& spec,
                               std::map<std::string, std::string> meta) {
  nn::Checkpoint ckpt;
  ckpt.arch = model->arch_string();
  meta["arch_kind"] = to_string(spec.kind);
  meta["input_dim"] = std::to_string(spec.input_dim);
  meta["input_dim_b"] = std::to_string(spec.input_dim_b);
  meta["context"] = std::to_string(spec.context);
  meta["combine"] = to_string(spec.combine);
  ckpt.meta = std::move(meta);
  nn::pack_params(model->params(), &ckpt);
  return ckpt;
}

ArchSpec spec_from_checkpoint(const nn::Checkpoint& ckpt) {
  const auto meta = [&](const char* key) {
    const auto it = ckpt.meta.find(key);
    if (it == ckpt.meta.end())
      throw FormatError("classifier checkpoint: missing meta key '" + std::string(key) +
                        "'");
    return it->second;
  };
  ArchSpec spec;
  spec.kind = arch_from_string(meta("arch_kind"));
  spec.input_dim = std::stoi(meta("input_dim"));
  spec.input_dim_b = std::stoi(meta("input_dim_b"));
  spec.context = std::stoi(meta("context"));
  spec.combine = combine_from_string(meta("combine"));
  return spec;
}

std::unique_ptr<Model<float>> model_from_checkpoint(const nn::Checkpoint& ckpt) {
  auto model = build_model<float>(spec_from_checkpoint(ckpt), /*init_seed=*/0);
  nn::unpack_params(ckpt, model->params());
  return model;
}

}  // namespace deprspeech::clf
