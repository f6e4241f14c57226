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

#include <benchmark/benchmark.h>

#include "deprspeech/ge2e/loss.hpp"
#include "deprspeech/ge2e/model.hpp"
#include "deprspeech/nn/lstm.hpp"

namespace {

using namespace deprspeech;

std::vector<nn::MatX<float>> random_sequence(int steps, int batch, int dim,
                                             uint64_t seed) {
  Rng rng(seed);
  std::vector<nn::MatX<float>> xs(static_cast<size_t>(steps));
  for (auto& x : xs) {
    x.resize(batch, dim);
    for (Eigen::Index r = 0; r < batch; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) x(r, c) = static_cast<float>(rng.normal());
  }
  return xs;
}

/// One training-shaped forward of the speaker-embedding stack
/// (32 sequences x 160 frames x 40 mfcc).
void BM_EmbeddingForward(benchmark::State& state) {
  Rng rng(1);
  ge2e::EmbeddingModel<float> model(40, rng);
  const auto xs = random_sequence(160, 32, 40, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.forward(xs, nullptr));
  }
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_EmbeddingForward)->Unit(benchmark::kMillisecond);

void BM_EmbeddingForwardBackward(benchmark::State& state) {
  Rng rng(1);
  ge2e::EmbeddingModel<float> model(40, rng);
  ge2e::LossParams lp;
  const auto xs = random_sequence(160, 32, 40, 2);
  for (auto _ : state) {
    typename ge2e::EmbeddingModel<float>::Cache cache;
    const auto emb = model.forward(xs, &cache);
    const auto loss = ge2e::ge2e_loss(emb, 8, 4, lp);
    model.zero_grad();
    model.backward(cache, loss.grad_emb);
    benchmark::DoNotOptimize(loss.loss);
  }
}
BENCHMARK(BM_EmbeddingForwardBackward)->Unit(benchmark::kMillisecond);

void BM_Ge2eLoss(benchmark::State& state) {
  const int n = 8, m = 4, p = 256;
  Rng rng(3);
  nn::MatX<float> emb(n * m, p);
  for (Eigen::Index r = 0; r < emb.rows(); ++r) {
    for (Eigen::Index c = 0; c < p; ++c) emb(r, c) = static_cast<float>(rng.normal());
    emb.row(r).normalize();
  }
  ge2e::LossParams lp;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ge2e::ge2e_loss(emb, n, m, lp));
  }
}
BENCHMARK(BM_Ge2eLoss);

void BM_LstmStep128(benchmark::State& state) {
  Rng rng(4);
  nn::LstmStack<float> stack(256, 128, 2, rng);
  const auto xs = random_sequence(16, 128, 256, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stack.forward_last(xs, nullptr));
  }
}
BENCHMARK(BM_LstmStep128)->Unit(benchmark::kMillisecond);

}  // namespace
