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

#include "deprspeech/ge2e/train.hpp"

#include <cmath>

namespace deprspeech::ge2e {

namespace {

double batch_loss(const Batch& batch, const EmbeddingModel<float>& model,
                  const LossParams& params) {
  const auto xs = batch.time_major();
  const nn::MatX<float> emb = model.forward(xs, nullptr);
  return ge2e_loss(emb, batch.n_speakers, batch.m_utts, params).loss;
}

void clip_gradients(const std::vector<nn::ParamRef<float>>& params, double max_norm) {
  if (max_norm <= 0.0) return;
  double sumsq = 0.0;
  for (const auto& p : params) sumsq += static_cast<double>(p.grad->squaredNorm());
  const double norm = std::sqrt(sumsq);
  if (norm <= max_norm) return;
  const auto scale = static_cast<float>(max_norm / norm);
  for (const auto& p : params) *p.grad *= scale;
}

}  // namespace

TrainResult train(const Dataset& train_data, const Dataset& holdout_data,
                  EmbeddingModel<float>* model, LossParams* loss_params,
                  const TrainConfig& cfg) {
  TrainResult result;

  // (w, b) ride along as 1x1 tensors with a reduced learning rate.
  nn::MatX<float> w_param(1, 1), b_param(1, 1);
  nn::MatX<float> w_grad = nn::MatX<float>::Zero(1, 1);
  nn::MatX<float> b_grad = nn::MatX<float>::Zero(1, 1);
  w_param(0, 0) = static_cast<float>(loss_params->w);
  b_param(0, 0) = static_cast<float>(loss_params->b);

  auto params = model->params();
  params.push_back({"loss.w", &w_param, &w_grad, cfg.loss_param_lr_scale});
  params.push_back({"loss.b", &b_param, &b_grad, cfg.loss_param_lr_scale});

  nn::Adam<float> opt(cfg.adam);
  opt.init(params);

  // The holdout split may be smaller than a full training batch; the fixed
  // holdout batch shrinks its speaker count to what the split can fill.
  const int holdout_n = std::min(
      cfg.n_speakers, eligible_speaker_count(holdout_data, cfg.m_utts, cfg.crop_frames));
  const Batch holdout = build_batch(holdout_data, holdout_n, cfg.m_utts, cfg.crop_frames,
                                    derive_seed(cfg.seed, "ge2e/holdout"));
  result.holdout_before = batch_loss(holdout, *model, *loss_params);

  for (int step = 0; step < cfg.steps; ++step) {
    const Batch batch =
        build_batch(train_data, cfg.n_speakers, cfg.m_utts, cfg.crop_frames,
                    derive_seed(cfg.seed, "ge2e/batch", static_cast<uint64_t>(step)));
    const auto xs = batch.time_major();

    typename EmbeddingModel<float>::Cache cache;
    const nn::MatX<float> emb = model->forward(xs, &cache);
    const auto loss = ge2e_loss(emb, batch.n_speakers, batch.m_utts, *loss_params);
    if (!std::isfinite(loss.loss))
      throw Error("ge2e training diverged at step " + std::to_string(step) +
                  " (loss = " + std::to_string(loss.loss) + ", w = " +
                  std::to_string(loss_params->w) + ", b = " +
                  std::to_string(loss_params->b) + ")");
    result.loss_curve.push_back(loss.loss);

    nn::zero_grads(params);
    model->backward(cache, loss.grad_emb);
    w_grad(0, 0) = static_cast<float>(loss.grad_w);
    b_grad(0, 0) = static_cast<float>(loss.grad_b);
    clip_gradients(params, cfg.grad_clip_norm);
    opt.step(params);

    loss_params->w = static_cast<double>(w_param(0, 0));
    loss_params->b = static_cast<double>(b_param(0, 0));
    loss_params->clamp();
    w_param(0, 0) = static_cast<float>(loss_params->w);
  }

  result.holdout_after = batch_loss(holdout, *model, *loss_params);
  return result;
}

nn::Checkpoint make_checkpoint(EmbeddingModel<float>& model, const LossParams& params,
                               std::map<std::string, std::string> meta) {
  nn::Checkpoint ckpt;
  ckpt.arch = model.arch_string();
  meta["input_dim"] = std::to_string(model.input_dim());
  meta["hidden"] = std::to_string(model.lstm.hidden_dim());
  meta["layers"] = std::to_string(model.lstm.layers.size());
  meta["embed_dim"] = std::to_string(model.embed_dim());
  ckpt.meta = std::move(meta);
  nn::pack_params(model.params(), &ckpt);

  nn::MatX<float> w(1, 1), b(1, 1);
  w(0, 0) = static_cast<float>(params.w);
  b(0, 0) = static_cast<float>(params.b);
  ckpt.tensors.push_back(nn::to_named_tensor("loss.w", w));
  ckpt.tensors.push_back(nn::to_named_tensor("loss.b", b));
  return ckpt;
}

EmbeddingModel<float> model_from_checkpoint(const nn::Checkpoint& ckpt,
                                            LossParams* params) {
  const auto meta_int = [&](const char* key) {
    const auto it = ckpt.meta.find(key);
    if (it == ckpt.meta.end())
      throw FormatError("ge2e checkpoint: missing meta key '" + std::string(key) + "'");
    return std::stoi(it->second);
  };
  Rng init_rng(0);  // overwritten by the stored tensors below
  EmbeddingModel<float> model(meta_int("input_dim"), init_rng, meta_int("hidden"),
                              meta_int("layers"), meta_int("embed_dim"));
  nn::unpack_params(ckpt, model.params());
  if (params) {
    params->w = static_cast<double>(ckpt.tensor("loss.w").data.at(0));
    params->b = static_cast<double>(ckpt.tensor("loss.b").data.at(0));
  }
  return model;
}

}  // namespace deprspeech::ge2e
