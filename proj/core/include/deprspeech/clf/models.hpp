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

#ifndef DEPRSPEECH_CLF_MODELS_HPP_
#define DEPRSPEECH_CLF_MODELS_HPP_

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "deprspeech/clf/context.hpp"
#include "deprspeech/nn/layers.hpp"
#include "deprspeech/nn/lstm.hpp"

namespace deprspeech::clf {

enum class Arch { kDnnD, kCnnD, kLstmD, kCeDd, kCeDc, kCeDl };
enum class CombineMode { kSum, kHadamard, kConcat, kAverage, kScalarDot };

std::string to_string(Arch a);
std::string to_string(CombineMode m);
Arch arch_from_string(const std::string& s);
CombineMode combine_from_string(const std::string& s);
bool is_fusion(Arch a);

/// Layer sizes are fixed; input dims, context and the fusion combiner are
/// per-experiment.
struct ArchSpec {
  Arch kind = Arch::kLstmD;
  int input_dim = 0;    // branch A / sole input
  int input_dim_b = 0;  // branch B (fusion only)
  int context = 1;
  CombineMode combine = CombineMode::kHadamard;
};

// Hyperparameters of the four architectures.
constexpr std::array<int, 3> kDnnHidden = {128, 64, 128};
constexpr std::array<int, 3> kConvKernels = {3, 4, 5};
constexpr int kConvChannels = 50;
constexpr int kConv2Kernel = 4;
constexpr int kCnnMinContext = 8;  // shorter windows are zero-padded, centered
constexpr int kLstmUnits = 128;
constexpr int kLstmLayers = 2;
constexpr int kHeadUnits = 100;
constexpr int kClasses = 2;
constexpr double kCnnDropout = 0.3;
constexpr double kLstmDropout = 0.4;
constexpr double kFcDropout = 0.3;

/// Mini-batch of context windows (fusion windows optional).
template <class T>
struct SampleBatch {
  int context = 0;
  std::vector<nn::MatX<T>> windows_a;
  std::vector<nn::MatX<T>> windows_b;
  std::vector<int> labels;

  int size() const { return static_cast<int>(windows_a.size()); }

  /// xs[t] is B x D, the layout the batched LSTM consumes.
  std::vector<nn::MatX<T>> time_major(const std::vector<nn::MatX<T>>& windows) const {
    std::vector<nn::MatX<T>> xs(static_cast<size_t>(context));
    const auto batch = static_cast<Eigen::Index>(windows.size());
    const auto dim = windows.empty() ? 0 : windows[0].cols();
    for (int t = 0; t < context; ++t) {
      xs[static_cast<size_t>(t)].resize(batch, dim);
      for (Eigen::Index r = 0; r < batch; ++r)
        xs[static_cast<size_t>(t)].row(r) = windows[static_cast<size_t>(r)].row(t);
    }
    return xs;
  }
};

template <class T>
SampleBatch<T> to_batch(std::span<const ContextSample> samples) {
  SampleBatch<T> batch;
  if (samples.empty()) throw ValidationError("to_batch: empty sample list");
  batch.context = static_cast<int>(samples[0].window.rows());
  for (const auto& s : samples) {
    batch.windows_a.push_back(s.window.template cast<T>());
    batch.labels.push_back(static_cast<int>(s.label));
  }
  return batch;
}

template <class T>
SampleBatch<T> to_batch(std::span<const FusionSample> samples) {
  SampleBatch<T> batch;
  if (samples.empty()) throw ValidationError("to_batch: empty sample list");
  batch.context = static_cast<int>(samples[0].window_a.rows());
  for (const auto& s : samples) {
    if (s.window_b.rows() != s.window_a.rows())
      throw ShapeError("fusion sample " + s.recording_id + "@" +
                       std::to_string(s.start_index) + ": misaligned windows " +
                       nn::shape_str(s.window_a) + " vs " + nn::shape_str(s.window_b));
    batch.windows_a.push_back(s.window_a.template cast<T>());
    batch.windows_b.push_back(s.window_b.template cast<T>());
    batch.labels.push_back(static_cast<int>(s.label));
  }
  return batch;
}

/// Common training/inference surface of the depression classifiers. forward
/// stashes the caches backward consumes, so a model instance is
/// single-writer during training; frozen inference is pure.
template <class T>
class Model {
 public:
  virtual ~Model() = default;

  /// B x 2 class log-probabilities.
  virtual nn::MatX<T> forward(const SampleBatch<T>& batch, bool train, Rng* rng) = 0;
  /// Gradient w.r.t. the returned log-probabilities; accumulates parameter
  /// gradients from the caches of the preceding forward.
  virtual void backward(const nn::MatX<T>& grad_log_probs) = 0;
  virtual void zero_grad() = 0;
  virtual std::vector<nn::ParamRef<T>> params() = 0;
  virtual std::string arch_string() const = 0;

  int64_t n_params() { return nn::param_count(params()); }
};

// ---------------------------------------------------------------------------
// Blocks shared between the single-feature models and the fusion branches.
// ---------------------------------------------------------------------------

/// Flattened window -> 128 -> 64 -> 128, ReLU after each layer, dropout 0.3
/// after each activation in training.
template <class T>
struct DnnBlock {
  nn::Linear<T> fc1, fc2, fc3;
  nn::Dropout<T> drop1{kFcDropout}, drop2{kFcDropout}, drop3{kFcDropout};

  struct Cache {
    nn::MatX<T> x, z1, z2, z3, a1, a2;  // a* are post-ReLU post-dropout
  };
  Cache cache;

  DnnBlock() = default;
  DnnBlock(int input_dim, int context, Rng& rng)
      : fc1(input_dim * context, kDnnHidden[0], rng),
        fc2(kDnnHidden[0], kDnnHidden[1], rng),
        fc3(kDnnHidden[1], kDnnHidden[2], rng) {}

  int out_dim() const { return kDnnHidden[2]; }

  nn::MatX<T> forward(const std::vector<nn::MatX<T>>& windows, bool train, Rng* rng) {
    const auto batch = static_cast<Eigen::Index>(windows.size());
    cache.x.resize(batch, fc1.in_dim());
    for (Eigen::Index r = 0; r < batch; ++r) {
      const auto& w = windows[static_cast<size_t>(r)];
      for (Eigen::Index t = 0; t < w.rows(); ++t)
        cache.x.row(r).segment(t * w.cols(), w.cols()) = w.row(t);
    }
    cache.z1 = fc1.forward(cache.x);
    cache.a1 = drop1.forward(nn::relu(cache.z1), train, rng);
    cache.z2 = fc2.forward(cache.a1);
    cache.a2 = drop2.forward(nn::relu(cache.z2), train, rng);
    cache.z3 = fc3.forward(cache.a2);
    return drop3.forward(nn::relu(cache.z3), train, rng);
  }

  void backward(const nn::MatX<T>& g_out) {
    const nn::MatX<T> g3 = nn::relu_backward(cache.z3, drop3.backward(g_out));
    const nn::MatX<T> ga2 = fc3.backward(cache.a2, g3);
    const nn::MatX<T> g2 = nn::relu_backward(cache.z2, drop2.backward(ga2));
    const nn::MatX<T> ga1 = fc2.backward(cache.a1, g2);
    const nn::MatX<T> g1 = nn::relu_backward(cache.z1, drop1.backward(ga1));
    fc1.backward(cache.x, g1);
  }

  void zero_grad() {
    fc1.zero_grad();
    fc2.zero_grad();
    fc3.zero_grad();
  }

  std::vector<nn::ParamRef<T>> params(const std::string& prefix) {
    std::vector<nn::ParamRef<T>> out;
    for (auto& p : fc1.params(prefix + ".fc1")) out.push_back(p);
    for (auto& p : fc2.params(prefix + ".fc2")) out.push_back(p);
    for (auto& p : fc3.params(prefix + ".fc3")) out.push_back(p);
    return out;
  }
};

/// Three parallel kernels (3, D), (4, D), (5, D) x 50 channels, each
/// followed by a second convolution of size 4 x 50 channels; branch outputs
/// are flattened (time-major) and concatenated. Windows shorter than 8 rows
/// are zero-padded, centered, so the (5, D) + size-4 stack still yields one
/// output row; pad_events counts forwards that touched the padding path.
template <class T>
struct MultiKernelConvBlock {
  std::array<nn::ConvTime<T>, 3> conv1;
  std::array<nn::ConvTime<T>, 3> conv2;
  nn::Dropout<T> drop{kCnnDropout};
  int input_dim = 0;
  int context = 0;
  int padded_len = 0;
  int64_t pad_events = 0;

  struct BranchCache {
    nn::MatX<T> x;            // padded window
    nn::MatX<T> z1, a1, z2;  // conv1 out, relu, conv2 out
  };
  std::vector<std::array<BranchCache, 3>> caches;  // per sample

  MultiKernelConvBlock() = default;
  MultiKernelConvBlock(int in_dim, int ctx, Rng& rng)
      : input_dim(in_dim), context(ctx), padded_len(std::max(ctx, kCnnMinContext)) {
    for (size_t b = 0; b < kConvKernels.size(); ++b) {
      conv1[b] = nn::ConvTime<T>(kConvKernels[b], in_dim, kConvChannels, rng);
      conv2[b] = nn::ConvTime<T>(kConv2Kernel, kConvChannels, kConvChannels, rng);
    }
  }

  int branch_out_len(int b) const {
    return padded_len - kConvKernels[static_cast<size_t>(b)] + 1 - kConv2Kernel + 1;
  }

  int out_dim() const {
    int total = 0;
    for (int b = 0; b < 3; ++b) total += branch_out_len(b) * kConvChannels;
    return total;
  }

  nn::MatX<T> pad_window(const nn::MatX<T>& w) {
    if (static_cast<int>(w.rows()) >= padded_len) return w;
    ++pad_events;
    const int missing = padded_len - static_cast<int>(w.rows());
    const int top = missing / 2;
    nn::MatX<T> padded = nn::MatX<T>::Zero(padded_len, w.cols());
    padded.middleRows(top, w.rows()) = w;
    return padded;
  }

  nn::MatX<T> forward(const std::vector<nn::MatX<T>>& windows, bool train, Rng* rng) {
    const auto batch = windows.size();
    caches.assign(batch, {});
    nn::MatX<T> out(static_cast<Eigen::Index>(batch), out_dim());
    for (size_t s = 0; s < batch; ++s) {
      int col = 0;
      for (int b = 0; b < 3; ++b) {
        BranchCache& c = caches[s][static_cast<size_t>(b)];
        c.x = pad_window(windows[s]);
        c.z1 = conv1[static_cast<size_t>(b)].forward(c.x);
        c.a1 = nn::relu(c.z1);
        c.z2 = conv2[static_cast<size_t>(b)].forward(c.a1);
        const nn::MatX<T> a2 = nn::relu(c.z2);
        for (Eigen::Index t = 0; t < a2.rows(); ++t) {
          out.row(static_cast<Eigen::Index>(s)).segment(col, a2.cols()) = a2.row(t);
          col += static_cast<int>(a2.cols());
        }
      }
    }
    return drop.forward(out, train, rng);
  }

  void backward(const nn::MatX<T>& g_out_dropped) {
    const nn::MatX<T> g_out = drop.backward(g_out_dropped);
    for (size_t s = 0; s < caches.size(); ++s) {
      int col = 0;
      for (int b = 0; b < 3; ++b) {
        BranchCache& c = caches[s][static_cast<size_t>(b)];
        const int t_out = branch_out_len(b);
        nn::MatX<T> ga2(t_out, kConvChannels);
        for (int t = 0; t < t_out; ++t) {
          ga2.row(t) = g_out.row(static_cast<Eigen::Index>(s)).segment(col, kConvChannels);
          col += kConvChannels;
        }
        const nn::MatX<T> gz2 = nn::relu_backward(c.z2, ga2);
        const nn::MatX<T> ga1 = conv2[static_cast<size_t>(b)].backward(c.a1, gz2);
        const nn::MatX<T> gz1 = nn::relu_backward(c.z1, ga1);
        conv1[static_cast<size_t>(b)].backward(c.x, gz1);
      }
    }
  }

  void zero_grad() {
    for (auto& c : conv1) c.zero_grad();
    for (auto& c : conv2) c.zero_grad();
  }

  std::vector<nn::ParamRef<T>> params(const std::string& prefix) {
    std::vector<nn::ParamRef<T>> out;
    for (int b = 0; b < 3; ++b) {
      const std::string k = std::to_string(kConvKernels[static_cast<size_t>(b)]);
      for (auto& p : conv1[static_cast<size_t>(b)].params(prefix + ".conv1_k" + k))
        out.push_back(p);
      for (auto& p : conv2[static_cast<size_t>(b)].params(prefix + ".conv2_k" + k))
        out.push_back(p);
    }
    return out;
  }
};

/// 2-layer LSTM(128); the block output is the last timestep of the top
/// layer, with dropout 0.4 in training.
template <class T>
struct LstmBlock {
  nn::LstmStack<T> lstm;
  nn::Dropout<T> drop{kLstmDropout};

  struct Cache {
    typename nn::LstmStack<T>::Cache lstm;
  };
  Cache cache;

  LstmBlock() = default;
  LstmBlock(int input_dim, Rng& rng) : lstm(input_dim, kLstmUnits, kLstmLayers, rng) {}

  int out_dim() const { return kLstmUnits; }

  nn::MatX<T> forward(const SampleBatch<T>& batch, const std::vector<nn::MatX<T>>& windows,
                      bool train, Rng* rng) {
    const auto xs = batch.time_major(windows);
    const nn::MatX<T> last = lstm.forward_last(xs, &cache.lstm);
    return drop.forward(last, train, rng);
  }

  void backward(const nn::MatX<T>& g_out) {
    lstm.backward_from_last(cache.lstm, drop.backward(g_out));
  }

  void zero_grad() { lstm.zero_grad(); }

  std::vector<nn::ParamRef<T>> params(const std::string& prefix) {
    return lstm.params(prefix);
  }
};

// ---------------------------------------------------------------------------
// The four classifiers.
// ---------------------------------------------------------------------------

/// Baseline fully-connected network over single segments (context 1):
/// hidden 128/64/128 with ReLU, softmax output with 2 units.
template <class T>
class DnnD : public Model<T> {
 public:
  DnnD(int input_dim, Rng& rng)
      : block_(input_dim, 1, rng), out_(kDnnHidden[2], kClasses, rng),
        input_dim_(input_dim) {}

  nn::MatX<T> forward(const SampleBatch<T>& batch, bool train, Rng* rng) override {
    if (batch.context != 1)
      throw ConfigError("dnn_d consumes single segments; got context " +
                        std::to_string(batch.context));
    hidden_ = block_.forward(batch.windows_a, train, rng);
    log_probs_ = nn::log_softmax(out_.forward(hidden_));
    return log_probs_;
  }

  void backward(const nn::MatX<T>& grad_log_probs) override {
    const nn::MatX<T> g_logits = nn::log_softmax_backward(log_probs_, grad_log_probs);
    block_.backward(out_.backward(hidden_, g_logits));
  }

  void zero_grad() override {
    block_.zero_grad();
    out_.zero_grad();
  }

  std::vector<nn::ParamRef<T>> params() override {
    auto out = block_.params("dnn");
    for (auto& p : out_.params("out")) out.push_back(p);
    return out;
  }

  std::string arch_string() const override {
    return "dnn_d:in" + std::to_string(input_dim_);
  }

 private:
  DnnBlock<T> block_;
  nn::Linear<T> out_;
  nn::MatX<T> hidden_, log_probs_;
  int input_dim_;
};

/// Multi-kernel CNN: conv block, FC(100) with ReLU, softmax output.
template <class T>
class CnnD : public Model<T> {
 public:
  CnnD(int input_dim, int context, Rng& rng)
      : block_(input_dim, context, rng), fc_(block_.out_dim(), kHeadUnits, rng),
        out_(kHeadUnits, kClasses, rng) {}

  nn::MatX<T> forward(const SampleBatch<T>& batch, bool train, Rng* rng) override {
    if (batch.context != block_.context)
      throw ConfigError("cnn_d built for context " + std::to_string(block_.context) +
                        ", got " + std::to_string(batch.context));
    conv_out_ = block_.forward(batch.windows_a, train, rng);
    fc_z_ = fc_.forward(conv_out_);
    fc_a_ = fc_drop_.forward(nn::relu(fc_z_), train, rng);
    log_probs_ = nn::log_softmax(out_.forward(fc_a_));
    return log_probs_;
  }

  void backward(const nn::MatX<T>& grad_log_probs) override {
    const nn::MatX<T> g_logits = nn::log_softmax_backward(log_probs_, grad_log_probs);
    const nn::MatX<T> g_fca = out_.backward(fc_a_, g_logits);
    const nn::MatX<T> g_fcz = nn::relu_backward(fc_z_, fc_drop_.backward(g_fca));
    block_.backward(fc_.backward(conv_out_, g_fcz));
  }

  void zero_grad() override {
    block_.zero_grad();
    fc_.zero_grad();
    out_.zero_grad();
  }

  std::vector<nn::ParamRef<T>> params() override {
    auto out = block_.params("cnn");
    for (auto& p : fc_.params("fc")) out.push_back(p);
    for (auto& p : out_.params("out")) out.push_back(p);
    return out;
  }

  std::string arch_string() const override {
    return "cnn_d:in" + std::to_string(block_.input_dim) + ":ctx" +
           std::to_string(block_.context);
  }

  /// Number of forwards that used the zero-padding path (contexts < 8).
  int64_t pad_events() const { return block_.pad_events; }

 private:
  MultiKernelConvBlock<T> block_;
  nn::Linear<T> fc_, out_;
  nn::Dropout<T> fc_drop_{kFcDropout};
  nn::MatX<T> conv_out_, fc_z_, fc_a_, log_probs_;
};

/// 2-layer LSTM(128) over the context axis, last timestep, FC(100) with
/// ReLU, softmax output.
template <class T>
class LstmD : public Model<T> {
 public:
  LstmD(int input_dim, Rng& rng)
      : block_(input_dim, rng), fc_(kLstmUnits, kHeadUnits, rng),
        out_(kHeadUnits, kClasses, rng), input_dim_(input_dim) {}

  nn::MatX<T> forward(const SampleBatch<T>& batch, bool train, Rng* rng) override {
    block_out_ = block_.forward(batch, batch.windows_a, train, rng);
    fc_z_ = fc_.forward(block_out_);
    fc_a_ = fc_drop_.forward(nn::relu(fc_z_), train, rng);
    log_probs_ = nn::log_softmax(out_.forward(fc_a_));
    return log_probs_;
  }

  void backward(const nn::MatX<T>& grad_log_probs) override {
    const nn::MatX<T> g_logits = nn::log_softmax_backward(log_probs_, grad_log_probs);
    const nn::MatX<T> g_fca = out_.backward(fc_a_, g_logits);
    const nn::MatX<T> g_fcz = nn::relu_backward(fc_z_, fc_drop_.backward(g_fca));
    block_.backward(fc_.backward(block_out_, g_fcz));
  }

  void zero_grad() override {
    block_.zero_grad();
    fc_.zero_grad();
    out_.zero_grad();
  }

  std::vector<nn::ParamRef<T>> params() override {
    auto out = block_.params("lstm");
    for (auto& p : fc_.params("fc")) out.push_back(p);
    for (auto& p : out_.params("out")) out.push_back(p);
    return out;
  }

  std::string arch_string() const override {
    return "lstm_d:in" + std::to_string(input_dim_);
  }

 private:
  LstmBlock<T> block_;
  nn::Linear<T> fc_, out_;
  nn::Dropout<T> fc_drop_{kFcDropout};
  nn::MatX<T> block_out_, fc_z_, fc_a_, log_probs_;
  int input_dim_;
};

/// Two-branch fusion: each branch runs its block (DNN, CNN or LSTM per the
/// arch kind) and an FC(100) with ReLU; branch outputs combine via the
/// configured mode (the multiplicative "hadamard" mode by default) and feed
/// the softmax output layer. concat yields a 200-d combined vector,
/// scalar_dot a 1-d one, the rest 100-d.
template <class T>
class CeD : public Model<T> {
 public:
  CeD(const ArchSpec& spec, Rng& rng) : spec_(spec) {
    const int ctx = spec.context;
    switch (spec.kind) {
      case Arch::kCeDd:
        dnn_a_ = std::make_unique<DnnBlock<T>>(spec.input_dim, ctx, rng);
        dnn_b_ = std::make_unique<DnnBlock<T>>(spec.input_dim_b, ctx, rng);
        break;
      case Arch::kCeDc:
        cnn_a_ = std::make_unique<MultiKernelConvBlock<T>>(spec.input_dim, ctx, rng);
        cnn_b_ = std::make_unique<MultiKernelConvBlock<T>>(spec.input_dim_b, ctx, rng);
        break;
      case Arch::kCeDl:
        lstm_a_ = std::make_unique<LstmBlock<T>>(spec.input_dim, rng);
        lstm_b_ = std::make_unique<LstmBlock<T>>(spec.input_dim_b, rng);
        break;
      default:
        throw ConfigError("CeD: arch kind is not a fusion architecture");
    }
    fc_a_ = nn::Linear<T>(block_out_dim(0), kHeadUnits, rng);
    fc_b_ = nn::Linear<T>(block_out_dim(1), kHeadUnits, rng);
    // Branch biases start at one so the multiplicative combiners begin near
    // the identity instead of zeroing both branches.
    fc_a_.b.setOnes();
    fc_b_.b.setOnes();
    out_ = nn::Linear<T>(combined_dim(), kClasses, rng);
  }

  int combined_dim() const {
    switch (spec_.combine) {
      case CombineMode::kConcat: return 2 * kHeadUnits;
      case CombineMode::kScalarDot: return 1;
      default: return kHeadUnits;
    }
  }

  nn::MatX<T> forward(const SampleBatch<T>& batch, bool train, Rng* rng) override {
    if (batch.windows_b.size() != batch.windows_a.size())
      throw ShapeError("fusion forward: " + std::to_string(batch.windows_a.size()) +
                       " A-windows vs " + std::to_string(batch.windows_b.size()) +
                       " B-windows");
    block_a_out_ = run_block(0, batch, batch.windows_a, train, rng);
    block_b_out_ = run_block(1, batch, batch.windows_b, train, rng);
    a_z_ = fc_a_.forward(block_a_out_);
    a_ = drop_a_.forward(nn::relu(a_z_), train, rng);
    b_z_ = fc_b_.forward(block_b_out_);
    b_ = drop_b_.forward(nn::relu(b_z_), train, rng);
    combined_ = combine(a_, b_);
    log_probs_ = nn::log_softmax(out_.forward(combined_));
    return log_probs_;
  }

  void backward(const nn::MatX<T>& grad_log_probs) override {
    const nn::MatX<T> g_logits = nn::log_softmax_backward(log_probs_, grad_log_probs);
    const nn::MatX<T> g_comb = out_.backward(combined_, g_logits);
    auto [ga, gb] = combine_backward(g_comb);
    const nn::MatX<T> g_az = nn::relu_backward(a_z_, drop_a_.backward(ga));
    const nn::MatX<T> g_bz = nn::relu_backward(b_z_, drop_b_.backward(gb));
    backward_block(0, fc_a_.backward(block_a_out_, g_az));
    backward_block(1, fc_b_.backward(block_b_out_, g_bz));
  }

  void zero_grad() override {
    if (dnn_a_) dnn_a_->zero_grad();
    if (dnn_b_) dnn_b_->zero_grad();
    if (cnn_a_) cnn_a_->zero_grad();
    if (cnn_b_) cnn_b_->zero_grad();
    if (lstm_a_) lstm_a_->zero_grad();
    if (lstm_b_) lstm_b_->zero_grad();
    fc_a_.zero_grad();
    fc_b_.zero_grad();
    out_.zero_grad();
  }

  std::vector<nn::ParamRef<T>> params() override {
    std::vector<nn::ParamRef<T>> out;
    const auto add = [&out](std::vector<nn::ParamRef<T>> p) {
      out.insert(out.end(), p.begin(), p.end());
    };
    if (dnn_a_) add(dnn_a_->params("branch_a"));
    if (cnn_a_) add(cnn_a_->params("branch_a"));
    if (lstm_a_) add(lstm_a_->params("branch_a"));
    add(fc_a_.params("fc_a"));
    if (dnn_b_) add(dnn_b_->params("branch_b"));
    if (cnn_b_) add(cnn_b_->params("branch_b"));
    if (lstm_b_) add(lstm_b_->params("branch_b"));
    add(fc_b_.params("fc_b"));
    add(out_.params("out"));
    return out;
  }

  std::string arch_string() const override {
    return to_string(spec_.kind) + ":a" + std::to_string(spec_.input_dim) + ":b" +
           std::to_string(spec_.input_dim_b) + ":ctx" + std::to_string(spec_.context) +
           ":" + to_string(spec_.combine);
  }

 private:
  int block_out_dim(int which) const {
    switch (spec_.kind) {
      case Arch::kCeDd: return kDnnHidden[2];
      case Arch::kCeDc: return (which == 0 ? cnn_a_ : cnn_b_)->out_dim();
      default: return kLstmUnits;
    }
  }

  nn::MatX<T> run_block(int which, const SampleBatch<T>& batch,
                        const std::vector<nn::MatX<T>>& windows, bool train, Rng* rng) {
    switch (spec_.kind) {
      case Arch::kCeDd: return (which == 0 ? dnn_a_ : dnn_b_)->forward(windows, train, rng);
      case Arch::kCeDc: return (which == 0 ? cnn_a_ : cnn_b_)->forward(windows, train, rng);
      default: return (which == 0 ? lstm_a_ : lstm_b_)->forward(batch, windows, train, rng);
    }
  }

  void backward_block(int which, const nn::MatX<T>& g) {
    switch (spec_.kind) {
      case Arch::kCeDd: (which == 0 ? dnn_a_ : dnn_b_)->backward(g); break;
      case Arch::kCeDc: (which == 0 ? cnn_a_ : cnn_b_)->backward(g); break;
      default: (which == 0 ? lstm_a_ : lstm_b_)->backward(g); break;
    }
  }

  nn::MatX<T> combine(const nn::MatX<T>& a, const nn::MatX<T>& b) const {
    switch (spec_.combine) {
      case CombineMode::kSum: return a + b;
      case CombineMode::kAverage: return T(0.5) * (a + b);
      case CombineMode::kHadamard: return a.cwiseProduct(b);
      case CombineMode::kConcat: {
        nn::MatX<T> c(a.rows(), a.cols() + b.cols());
        c << a, b;
        return c;
      }
      case CombineMode::kScalarDot: {
        nn::MatX<T> c(a.rows(), 1);
        for (Eigen::Index r = 0; r < a.rows(); ++r) c(r, 0) = a.row(r).dot(b.row(r));
        return c;
      }
    }
    throw ConfigError("unknown combine mode");
  }

  std::pair<nn::MatX<T>, nn::MatX<T>> combine_backward(const nn::MatX<T>& g) const {
    switch (spec_.combine) {
      case CombineMode::kSum: return {g, g};
      case CombineMode::kAverage: return {T(0.5) * g, T(0.5) * g};
      case CombineMode::kHadamard: return {g.cwiseProduct(b_), g.cwiseProduct(a_)};
      case CombineMode::kConcat:
        return {g.leftCols(a_.cols()), g.rightCols(b_.cols())};
      case CombineMode::kScalarDot: {
        nn::MatX<T> ga(a_.rows(), a_.cols()), gb(b_.rows(), b_.cols());
        for (Eigen::Index r = 0; r < a_.rows(); ++r) {
          ga.row(r) = g(r, 0) * b_.row(r);
          gb.row(r) = g(r, 0) * a_.row(r);
        }
        return {ga, gb};
      }
    }
    throw ConfigError("unknown combine mode");
  }

  ArchSpec spec_;
  std::unique_ptr<DnnBlock<T>> dnn_a_, dnn_b_;
  std::unique_ptr<MultiKernelConvBlock<T>> cnn_a_, cnn_b_;
  std::unique_ptr<LstmBlock<T>> lstm_a_, lstm_b_;
  nn::Linear<T> fc_a_, fc_b_, out_;
  nn::Dropout<T> drop_a_{kFcDropout}, drop_b_{kFcDropout};
  nn::MatX<T> block_a_out_, block_b_out_, a_z_, b_z_, a_, b_, combined_, log_probs_;
};

/// Validates the spec and instantiates the matching model with seeded
/// initialization.
template <class T>
std::unique_ptr<Model<T>> build_model(const ArchSpec& spec, uint64_t init_seed) {
  if (spec.input_dim <= 0) throw ConfigError("build_model: input_dim must be positive");
  if (spec.context < 1) throw ConfigError("build_model: context must be >= 1");
  if (is_fusion(spec.kind) && spec.input_dim_b <= 0)
    throw ConfigError("build_model: fusion architectures need input_dim_b");
  if (spec.kind == Arch::kDnnD && spec.context != 1)
    throw ConfigError("dnn_d uses context 1, got " + std::to_string(spec.context));
  Rng rng(derive_seed(init_seed, "clf/init"));
  switch (spec.kind) {
    case Arch::kDnnD: return std::make_unique<DnnD<T>>(spec.input_dim, rng);
    case Arch::kCnnD: return std::make_unique<CnnD<T>>(spec.input_dim, spec.context, rng);
    case Arch::kLstmD: return std::make_unique<LstmD<T>>(spec.input_dim, rng);
    default: return std::make_unique<CeD<T>>(spec, rng);
  }
}

}  // namespace deprspeech::clf

#endif  // DEPRSPEECH_CLF_MODELS_HPP_
