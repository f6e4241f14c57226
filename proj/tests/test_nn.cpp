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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "deprspeech/common/io.hpp"
#include "deprspeech/nn/adam.hpp"
#include "deprspeech/nn/checkpoint.hpp"
#include "deprspeech/nn/gradcheck.hpp"
#include "deprspeech/nn/layers.hpp"
#include "deprspeech/nn/loss.hpp"
#include "deprspeech/nn/lstm.hpp"
#include "test_util.hpp"

using namespace deprspeech;
using namespace deprspeech::nn;
using deprspeech::testing::TempDir;

namespace {

MatX<double> random_mat(Eigen::Index rows, Eigen::Index cols, Rng& rng,
                        double scale = 1.0) {
  MatX<double> m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = scale * rng.normal();
  return m;
}

std::vector<int> random_labels(Eigen::Index n, int classes, Rng& rng) {
  std::vector<int> y(static_cast<size_t>(n));
  for (auto& v : y) v = static_cast<int>(rng.below(static_cast<uint64_t>(classes)));
  return y;
}

}  // namespace

TEST_CASE("linear layer identity and affine examples") {
  Rng rng(1);
  Linear<double> fc(2, 2, rng);
  fc.w = MatX<double>::Identity(2, 2);
  fc.b = MatX<double>::Zero(1, 2);
  MatX<double> x(1, 2);
  x << 1.0, 2.0;
  CHECK((fc.forward(x) - x).cwiseAbs().maxCoeff() == 0.0);

  fc.b << 1.0, 1.0;
  const MatX<double> y = fc.forward(x);
  CHECK(y(0, 0) == doctest::Approx(2.0));
  CHECK(y(0, 1) == doctest::Approx(3.0));
}

TEST_CASE("linear layer rejects mismatched shapes, listing both") {
  Rng rng(2);
  Linear<double> fc(5, 4, rng);
  try {
    fc.forward(MatX<double>::Zero(3, 6));
    FAIL("expected ShapeError");
  } catch (const ShapeError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("[3 x 6]") != std::string::npos);
    CHECK(msg.find("[5 x 4]") != std::string::npos);
  }
}

TEST_CASE("linear gradients match central differences at 1e-6") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed + 100);
    Linear<double> fc(5, 4, rng);
    MatX<double> x = random_mat(3, 5, rng);
    MatX<double> gx = MatX<double>::Zero(3, 5);
    const auto labels = random_labels(3, 4, rng);
    const std::vector<double> weights = {1.0, 2.0, 0.5, 1.5};

    auto params = fc.params("fc");
    params.push_back({"x", &x, &gx});
    const auto eval = [&](bool with_grad) {
      const MatX<double> logits = fc.forward(x);
      const MatX<double> logp = log_softmax(logits);
      const auto nll = weighted_nll(logp, labels, weights);
      if (with_grad) {
        const MatX<double> glogits = log_softmax_backward(logp, nll.grad_log_probs);
        gx += fc.backward(x, glogits);
      }
      return nll.loss;
    };
    const auto report = grad_check(params, eval, 24, seed);
    CHECK(report.max_rel_err < 1e-6);
  }
}

TEST_CASE("full-width time convolution: mean-preserving kernel and boundary") {
  Rng rng(3);
  const int d = 6;
  ConvTime<double> conv(2, d, 1, rng);
  conv.w.setConstant(1.0 / (2 * d));
  conv.b.setZero();
  const MatX<double> x = MatX<double>::Constant(5, d, 3.7);
  const MatX<double> y = conv.forward(x);
  REQUIRE(y.rows() == 4);
  for (Eigen::Index t = 0; t < y.rows(); ++t)
    CHECK(y(t, 0) == doctest::Approx(3.7).epsilon(1e-12));

  ConvTime<double> conv5(5, d, 2, rng);
  CHECK(conv5.forward(MatX<double>::Zero(5, d)).rows() == 1);
  CHECK_THROWS_AS(conv5.forward(MatX<double>::Zero(4, d)), ShapeError);
}

TEST_CASE("channel convolution: identity kernel shifts nothing, length arithmetic") {
  Rng rng(4);
  const int c = 3;
  ConvTime<double> conv(1, c, c, rng);
  conv.w = MatX<double>::Identity(c, c);
  conv.b.setZero();
  const MatX<double> x = random_mat(7, c, rng);
  CHECK((conv.forward(x) - x).cwiseAbs().maxCoeff() < 1e-15);

  ConvTime<double> conv4(4, c, 5, rng);
  CHECK(conv4.forward(random_mat(7, c, rng)).rows() == 4);  // 7 - 4 + 1
}

TEST_CASE("convolution gradients match central differences at 1e-6") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed + 200);
    ConvTime<double> conv(3, 4, 3, rng);
    MatX<double> x = random_mat(7, 4, rng);
    MatX<double> gx = MatX<double>::Zero(7, 4);
    const auto labels = random_labels(5, 3, rng);
    const std::vector<double> weights = {1.0, 1.0, 1.0};

    auto params = conv.params("conv");
    params.push_back({"x", &x, &gx});
    const auto eval = [&](bool with_grad) {
      const MatX<double> y = conv.forward(x);
      const MatX<double> logp = log_softmax(y);
      const auto nll = weighted_nll(logp, labels, weights);
      if (with_grad)
        gx += conv.backward(x, log_softmax_backward(logp, nll.grad_log_probs));
      return nll.loss;
    };
    const auto report = grad_check(params, eval, 24, seed);
    CHECK(report.max_rel_err < 1e-6);
  }
}

TEST_CASE("zero-weight zero-input lstm outputs zero") {
  Rng rng(5);
  LstmLayer<double> cell(3, 4, rng);
  cell.wx.setZero();
  cell.wh.setZero();
  cell.b.setZero();
  const std::vector<MatX<double>> xs(6, MatX<double>::Zero(2, 3));
  const auto hs = cell.forward(xs, nullptr);
  for (const auto& h : hs) CHECK(h.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single-unit lstm step matches the scalar hand trace") {
  Rng rng(6);
  LstmLayer<double> cell(1, 1, rng);
  cell.wx.setOnes();
  cell.wh.setOnes();
  cell.b.setZero();
  const std::vector<MatX<double>> xs = {MatX<double>::Constant(1, 1, 1.0)};
  const auto hs = cell.forward(xs, nullptr);

  // By hand: z = 1 for every gate; i = f = o = sigmoid(1), g = tanh(1);
  // c = i * g (previous state is zero); h = o * tanh(c).
  const double sig1 = 1.0 / (1.0 + std::exp(-1.0));
  const double c = sig1 * std::tanh(1.0);
  const double h = sig1 * std::tanh(c);
  CHECK(hs[0](0, 0) == doctest::Approx(h).epsilon(1e-15));
}

TEST_CASE("lstm BPTT gradients match central differences at 1e-5") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed + 300);
    LstmLayer<double> cell(3, 2, rng);
    std::vector<MatX<double>> xs;
    for (int t = 0; t < 4; ++t) xs.push_back(random_mat(2, 3, rng, 0.8));
    const auto labels = random_labels(2, 2, rng);
    const std::vector<double> weights = {1.0, 1.0};

    // The loss reads every timestep so the full recurrence is exercised.
    const auto eval = [&](bool with_grad) {
      typename LstmLayer<double>::Cache cache;
      const auto hs = cell.forward(xs, with_grad ? &cache : nullptr);
      MatX<double> pooled = MatX<double>::Zero(2, 2);
      for (const auto& h : hs) pooled += h;
      const MatX<double> logp = log_softmax(pooled);
      const auto nll = weighted_nll(logp, labels, weights);
      if (with_grad) {
        const MatX<double> g = log_softmax_backward(logp, nll.grad_log_probs);
        const std::vector<MatX<double>> ghs(hs.size(), g);
        cell.backward(cache, ghs);
      }
      return nll.loss;
    };
    const auto report = grad_check(cell.params("lstm"), eval, 24, seed);
    CHECK(report.max_rel_err < 1e-5);
  }
}

TEST_CASE("lstm rejects an empty sequence") {
  Rng rng(7);
  LstmStack<double> stack(3, 4, 2, rng);
  CHECK_THROWS_AS(stack.forward({}, nullptr), ValidationError);
}

TEST_CASE("softmax basics") {
  MatX<double> x(1, 2);
  x << 0.0, 0.0;
  const MatX<double> p = softmax(x);
  CHECK(p(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p(0, 1) == doctest::Approx(0.5).epsilon(1e-15));

  Rng rng(8);
  const MatX<double> r = random_mat(5, 7, rng, 10.0);
  const MatX<double> pr = softmax(r);
  for (Eigen::Index i = 0; i < pr.rows(); ++i) {
    CHECK(pr.row(i).minCoeff() >= 0.0);
    CHECK(pr.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
    // Argmax is invariant under adding a constant to the row.
    Eigen::Index a1 = 0, a2 = 0;
    pr.row(i).maxCoeff(&a1);
    softmax((r.array() + 31.7).matrix().eval()).row(i).maxCoeff(&a2);
    CHECK(a1 == a2);
  }
}

TEST_CASE("dropout is identity in evaluation and exactly scaled in training") {
  Rng rng(9);
  Dropout<double> drop(0.4);
  const MatX<double> x = random_mat(6, 5, rng);
  CHECK((drop.forward(x, false, nullptr) - x).cwiseAbs().maxCoeff() == 0.0);

  Rng stream1(42), stream2(42);
  const MatX<double> y1 = drop.forward(x, true, &stream1);
  Dropout<double> drop2(0.4);
  const MatX<double> y2 = drop2.forward(x, true, &stream2);
  CHECK((y1 - y2).cwiseAbs().maxCoeff() == 0.0);  // same stream, same mask
  for (Eigen::Index r = 0; r < y1.rows(); ++r)
    for (Eigen::Index c = 0; c < y1.cols(); ++c) {
      const bool dropped = y1(r, c) == 0.0;
      if (!dropped)
        CHECK(y1(r, c) == doctest::Approx(x(r, c) / 0.6).epsilon(1e-12));
    }
}

TEST_CASE("weighted nll examples") {
  SUBCASE("perfect prediction has zero loss") {
    MatX<double> logp(1, 2);
    logp << 0.0, -40.0;
    CHECK(weighted_nll(logp, {0}, {1.0, 1.0}).loss == doctest::Approx(0.0));
  }
  SUBCASE("uniform two-class log probs give ln 2") {
    MatX<double> logp(2, 2);
    logp.setConstant(std::log(0.5));
    CHECK(weighted_nll(logp, {0, 1}, {1.0, 1.0}).loss ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("doubling the positive-class weight doubles its loss") {
    MatX<double> logp(3, 2);
    logp.setConstant(std::log(0.5));
    const std::vector<int> labels = {1, 1, 1};
    const double base = weighted_nll(logp, labels, {1.0, 1.0}).loss;
    const double doubled = weighted_nll(logp, labels, {1.0, 2.0}).loss;
    CHECK(doubled == doctest::Approx(2.0 * base).epsilon(1e-12));
  }
  SUBCASE("nonpositive weights are rejected") {
    MatX<double> logp = MatX<double>::Zero(1, 2);
    CHECK_THROWS_AS(weighted_nll(logp, {0}, {0.0, 1.0}), ValidationError);
  }
}

TEST_CASE("softmax+nll gradient matches central differences") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed + 400);
    MatX<double> logits = random_mat(4, 3, rng);
    MatX<double> glogits = MatX<double>::Zero(4, 3);
    const auto labels = random_labels(4, 3, rng);
    const std::vector<double> weights = {0.7, 1.3, 2.0};
    const std::vector<ParamRef<double>> params = {{"logits", &logits, &glogits}};
    const auto eval = [&](bool with_grad) {
      const MatX<double> logp = log_softmax(logits);
      const auto nll = weighted_nll(logp, labels, weights);
      if (with_grad) glogits += log_softmax_backward(logp, nll.grad_log_probs);
      return nll.loss;
    };
    CHECK(grad_check(params, eval, 12, seed).max_rel_err < 1e-7);
  }
}

TEST_CASE("adam fixed point, first step and determinism") {
  SUBCASE("zero gradient leaves parameters exactly unchanged") {
    MatX<double> theta = MatX<double>::Constant(2, 2, 0.5);
    MatX<double> grad = MatX<double>::Zero(2, 2);
    const MatX<double> before = theta;
    Adam<double> opt;
    const std::vector<ParamRef<double>> params = {{"t", &theta, &grad}};
    opt.init(params);
    for (int i = 0; i < 5; ++i) opt.step(params);
    CHECK((theta - before).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("first step is approximately -lr * sign(g)") {
    MatX<double> theta = MatX<double>::Zero(1, 2);
    MatX<double> grad(1, 2);
    grad << 0.37, -2.1;
    Adam<double> opt;
    const std::vector<ParamRef<double>> params = {{"t", &theta, &grad}};
    opt.init(params);
    opt.step(params);
    CHECK(theta(0, 0) == doctest::Approx(-0.0005).epsilon(1e-6));
    CHECK(theta(0, 1) == doctest::Approx(0.0005).epsilon(1e-6));
  }
  SUBCASE("identical seeds give identical trajectories") {
    const auto run = [](uint64_t seed) {
      Rng rng(seed);
      MatX<double> theta = random_mat(3, 3, rng);
      MatX<double> grad(3, 3);
      Adam<double> opt;
      const std::vector<ParamRef<double>> params = {{"t", &theta, &grad}};
      opt.init(params);
      Rng grad_rng(seed + 1);
      for (int i = 0; i < 20; ++i) {
        grad = random_mat(3, 3, grad_rng);
        opt.step(params);
      }
      return theta;
    };
    CHECK((run(7) - run(7)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("inverse frequency class weights") {
  SUBCASE("balanced split gives unit weights") {
    std::vector<int> labels(50, 0);
    labels.insert(labels.end(), 50, 1);
    const auto w = inverse_frequency_weights(labels, 2);
    CHECK(w[0] == doctest::Approx(1.0));
    CHECK(w[1] == doctest::Approx(1.0));
  }
  SUBCASE("75/25 split gives 2/3 and 2") {
    std::vector<int> labels(75, 0);
    labels.insert(labels.end(), 25, 1);
    const auto w = inverse_frequency_weights(labels, 2);
    CHECK(w[0] == doctest::Approx(100.0 / 150.0).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("single-class labels are rejected") {
    const std::vector<int> labels(10, 1);
    CHECK_THROWS_AS(inverse_frequency_weights(labels, 2), ValidationError);
  }
}

TEST_CASE("checkpoint container roundtrip") {
  TempDir dir("ckpt");
  Rng rng(11);
  Linear<float> fc(4, 3, rng);
  Checkpoint ckpt;
  ckpt.arch = "test:fc4x3";
  ckpt.meta["seed"] = "11";
  pack_params(fc.params("fc"), &ckpt);
  save_checkpoint(ckpt, dir / "model.ckpt");

  const Checkpoint back = load_checkpoint(dir / "model.ckpt");
  CHECK(back.arch == ckpt.arch);
  CHECK(back.meta.at("seed") == "11");
  Linear<float> fc2(4, 3, rng);
  unpack_params(back, fc2.params("fc"));
  CHECK((fc2.w - fc.w).cwiseAbs().maxCoeff() == 0.0f);
  CHECK((fc2.b - fc.b).cwiseAbs().maxCoeff() == 0.0f);

  SUBCASE("missing tensor raises") {
    CHECK_THROWS_AS(back.tensor("nope"), FormatError);
  }
  SUBCASE("bad magic raises") {
    write_text_file(dir / "junk.ckpt", "NOTACKPT1234");
    CHECK_THROWS_AS(load_checkpoint(dir / "junk.ckpt"), FormatError);
  }
  SUBCASE("shape mismatch on unpack raises") {
    Linear<float> wrong(5, 3, rng);
    CHECK_THROWS_AS(unpack_params(back, wrong.params("fc")), ShapeError);
  }
}
