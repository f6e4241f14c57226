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

#ifndef DEPRSPEECH_GE2E_LOSS_HPP_
#define DEPRSPEECH_GE2E_LOSS_HPP_

#include <cmath>
#include <vector>

#include "deprspeech/nn/tensor.hpp"

namespace deprspeech::ge2e {

/// Learned affine similarity parameters. w stays positive (clamped to
/// kMinScale after every optimizer update).
struct LossParams {
  double w = 10.0;
  double b = -5.0;
  static constexpr double kMinScale = 1e-6;

  void clamp() {
    if (w < kMinScale) w = kMinScale;
  }
};

template <class T>
struct LossResult {
  double loss = 0.0;
  nn::MatX<T> grad_emb;   // (N*M) x P
  double grad_w = 0.0;
  double grad_b = 0.0;
  nn::MatX<T> similarity; // (N*M) x N, exclusion centroid on the own column
};

/// Centroid of speaker j over M utterances; rows of emb are grouped by
/// speaker: row index = j * m + i.
template <class T>
nn::VecX<T> centroid(const nn::MatX<T>& emb, int n_speakers, int m_utts, int j) {
  nn::VecX<T> c = nn::VecX<T>::Zero(emb.cols());
  for (int i = 0; i < m_utts; ++i) c += emb.row(j * m_utts + i).transpose();
  return c / static_cast<T>(m_utts);
}

/// Centroid of speaker j excluding utterance i (defined for M >= 2).
template <class T>
nn::VecX<T> centroid_excluding(const nn::MatX<T>& emb, int n_speakers, int m_utts,
                               int j, int i) {
  if (m_utts < 2)
    throw ValidationError("exclusion centroid undefined for M = 1");
  nn::VecX<T> c = nn::VecX<T>::Zero(emb.cols());
  for (int t = 0; t < m_utts; ++t)
    if (t != i) c += emb.row(j * m_utts + t).transpose();
  return c / static_cast<T>(m_utts - 1);
}

/// Softmax-variant embedding loss over a batch of N speakers x M
/// utterances.
///
/// S[ji, k] = w * cos(e_ji, c_k) + b, with the exclusion centroid
/// c_j^(-i) on the own-speaker column, and
/// L = sum_{j,i} ( -S[ji, j] + log sum_k exp(S[ji, k]) ).
/// Per-utterance terms are nonnegative since the log-sum dominates its own
/// target. Gradients flow to the embeddings and to (w, b).
template <class T>
LossResult<T> ge2e_loss(const nn::MatX<T>& emb, int n_speakers, int m_utts,
                        const LossParams& params) {
  if (n_speakers < 2 || m_utts < 2)
    throw ValidationError("ge2e_loss: need N >= 2 speakers and M >= 2 utterances, got N=" +
                          std::to_string(n_speakers) + " M=" + std::to_string(m_utts));
  if (emb.rows() != static_cast<Eigen::Index>(n_speakers) * m_utts)
    throw ShapeError("ge2e_loss: embeddings " + nn::shape_str(emb) + " do not hold " +
                     std::to_string(n_speakers) + "x" + std::to_string(m_utts) +
                     " rows");

  const int P = static_cast<int>(emb.cols());
  LossResult<T> out;
  out.grad_emb = nn::MatX<T>::Zero(emb.rows(), P);
  out.similarity.resize(emb.rows(), n_speakers);

  // Full centroids (used for k != j) and their norms.
  nn::MatX<T> cent(n_speakers, P);
  for (int k = 0; k < n_speakers; ++k)
    cent.row(k) = centroid(emb, n_speakers, m_utts, k).transpose();

  const T w = static_cast<T>(params.w);
  const T bias = static_cast<T>(params.b);

  struct Pair {
    nn::VecX<T> c;  // centroid used for this (ji, k)
    T cos = 0;
  };

  for (int j = 0; j < n_speakers; ++j) {
    for (int i = 0; i < m_utts; ++i) {
      const Eigen::Index row = static_cast<Eigen::Index>(j) * m_utts + i;
      const nn::VecX<T> u = emb.row(row).transpose();
      const T un = u.norm();

      std::vector<Pair> pairs(static_cast<size_t>(n_speakers));
      for (int k = 0; k < n_speakers; ++k) {
        Pair& pr = pairs[static_cast<size_t>(k)];
        pr.c = (k == j) ? centroid_excluding(emb, n_speakers, m_utts, j, i)
                        : nn::VecX<T>(cent.row(k).transpose());
        const T cn = pr.c.norm();
        pr.cos = u.dot(pr.c) / (un * cn);
        out.similarity(row, k) = w * pr.cos + bias;
      }

      // log-sum-exp and per-column softmax of the similarity row.
      const T row_max = out.similarity.row(row).maxCoeff();
      T lse = 0;
      for (int k = 0; k < n_speakers; ++k)
        lse += std::exp(out.similarity(row, k) - row_max);
      const T log_denom = row_max + std::log(lse);
      out.loss += static_cast<double>(-out.similarity(row, j) + log_denom);

      for (int k = 0; k < n_speakers; ++k) {
        const T p = std::exp(out.similarity(row, k) - log_denom);
        const T ds = p - (k == j ? T(1) : T(0));  // dL / dS[ji,k]
        if (ds == T(0)) continue;
        const Pair& pr = pairs[static_cast<size_t>(k)];
        out.grad_w += static_cast<double>(ds * pr.cos);
        out.grad_b += static_cast<double>(ds);

        const T cn = pr.c.norm();
        // d cos / d u and d cos / d c of cos(u, c) = u.c / (|u||c|).
        const nn::VecX<T> dcos_du = pr.c / (un * cn) - (pr.cos / (un * un)) * u;
        const nn::VecX<T> dcos_dc = u / (un * cn) - (pr.cos / (cn * cn)) * pr.c;
        out.grad_emb.row(row) += (ds * w) * dcos_du.transpose();
        if (k == j) {
          const T share = ds * w / static_cast<T>(m_utts - 1);
          for (int t = 0; t < m_utts; ++t)
            if (t != i)
              out.grad_emb.row(static_cast<Eigen::Index>(j) * m_utts + t) +=
                  share * dcos_dc.transpose();
        } else {
          const T share = ds * w / static_cast<T>(m_utts);
          for (int t = 0; t < m_utts; ++t)
            out.grad_emb.row(static_cast<Eigen::Index>(k) * m_utts + t) +=
                share * dcos_dc.transpose();
        }
      }
    }
  }
  return out;
}

}  // namespace deprspeech::ge2e

#endif  // DEPRSPEECH_GE2E_LOSS_HPP_
