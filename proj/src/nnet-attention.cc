// src/nnet-attention.cc

// Copyright 2026  The FTM Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "ftm/nnet-attention.h"

#include <cmath>
#include <limits>

#include "ftm/error.h"

namespace ftm {

namespace {
constexpr double kLayerNormEpsilon = 1e-5;
}

AttentionLayerParams AttentionLayerParams::Zeros(int model_dim, int num_heads) {
  if (model_dim <= 0 || num_heads <= 0 || model_dim % num_heads != 0)
    throw Error(ErrorKind::kShape, "model_dim must be a positive multiple of num_heads");
  AttentionLayerParams p;
  p.model_dim = model_dim;
  p.num_heads = num_heads;
  p.ln_gain = Vector::Zero(model_dim);
  p.ln_bias = Vector::Zero(model_dim);
  for (Matrix *m : {&p.wq, &p.wk, &p.wv, &p.wo}) *m = Matrix::Zero(model_dim, model_dim);
  for (Vector *v : {&p.bq, &p.bk, &p.bv, &p.bo}) *v = Vector::Zero(model_dim);
  return p;
}

void AttentionLayerParams::InitRandom(Rng *rng) {
  const double k = 1.0 / std::sqrt(static_cast<double>(model_dim));
  ln_gain.setOnes();
  ln_bias.setZero();
  for (Matrix *m : {&wq, &wk, &wv, &wo}) InitUniform(m, k, rng);
  for (Vector *v : {&bq, &bk, &bv, &bo}) InitUniform(v, k, rng);
}

int64_t AttentionLayerParams::NumParams() const {
  return ln_gain.size() + ln_bias.size() + 4 * (wq.size() + bq.size());
}

void AttentionLayerParams::AppendTensors(const std::string &prefix, TensorList *out) {
  AppendTensor(prefix + ".ln_gain", &ln_gain, out);
  AppendTensor(prefix + ".ln_bias", &ln_bias, out);
  AppendTensor(prefix + ".wq", &wq, out);
  AppendTensor(prefix + ".bq", &bq, out);
  AppendTensor(prefix + ".wk", &wk, out);
  AppendTensor(prefix + ".bk", &bk, out);
  AppendTensor(prefix + ".wv", &wv, out);
  AppendTensor(prefix + ".bv", &bv, out);
  AppendTensor(prefix + ".wo", &wo, out);
  AppendTensor(prefix + ".bo", &bo, out);
}

Matrix MaskedSelfAttention(const AttentionLayerParams &params, const Matrix &states,
                           const AttentionMask &mask, AttentionCache *cache) {
  const Eigen::Index n = states.cols();
  if (states.rows() != params.model_dim || n == 0)
    throw Error(ErrorKind::kShape, "attention input must be model_dim x N with N >= 1");
  if (mask.rows() != n || mask.cols() != n) throw Error(ErrorKind::kShape, "mask must be N x N");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!mask.row(i).any())
      throw Error(ErrorKind::kIsolatedNode, "node " + std::to_string(i) + " attends to nothing");

  AttentionCache local;
  AttentionCache &c = cache ? *cache : local;
  c.input = states;
  const Eigen::RowVectorXd mean = states.colwise().mean();
  const Matrix centered = states.rowwise() - mean;
  const Eigen::RowVectorXd var = centered.array().square().colwise().mean();
  c.inv_std = (var.array() + kLayerNormEpsilon).rsqrt().transpose();
  c.xhat = centered * c.inv_std.asDiagonal();
  c.normed = (params.ln_gain.asDiagonal() * c.xhat).colwise() + params.ln_bias;
  c.q = (params.wq * c.normed).colwise() + params.bq;
  c.k = (params.wk * c.normed).colwise() + params.bk;
  c.v = (params.wv * c.normed).colwise() + params.bv;

  const int dh = params.HeadDim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  c.probs.assign(params.num_heads, Matrix());
  c.context.resize(params.model_dim, n);
  for (int head = 0; head < params.num_heads; ++head) {
    const auto qh = c.q.middleRows(head * dh, dh);
    const auto kh = c.k.middleRows(head * dh, dh);
    Matrix scores = (qh.transpose() * kh) * scale;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row_max = -std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j)
        if (mask(i, j)) row_max = std::max(row_max, scores(i, j));
      double total = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        scores(i, j) = mask(i, j) ? std::exp(scores(i, j) - row_max) : 0.0;
        total += scores(i, j);
      }
      scores.row(i) /= total;
    }
    c.context.middleRows(head * dh, dh).noalias() = c.v.middleRows(head * dh, dh) * scores.transpose();
    c.probs[head] = std::move(scores);
  }
  Matrix out = states + params.wo * c.context;
  out.colwise() += params.bo;
  return out;
}

Matrix MaskedSelfAttentionBackward(const AttentionLayerParams &params,
                                   const AttentionCache &cache, const Matrix &d_out,
                                   AttentionLayerParams *grad) {
  const Eigen::Index n = cache.input.cols();
  if (d_out.rows() != params.model_dim || d_out.cols() != n)
    throw Error(ErrorKind::kShape, "attention backward gradient shape mismatch");
  grad->wo.noalias() += d_out * cache.context.transpose();
  grad->bo += d_out.rowwise().sum();
  const Matrix d_context = params.wo.transpose() * d_out;

  const int dh = params.HeadDim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  Matrix dq(params.model_dim, n), dk(params.model_dim, n), dv(params.model_dim, n);
  for (int head = 0; head < params.num_heads; ++head) {
    const Matrix &p = cache.probs[head];
    const auto dctx = d_context.middleRows(head * dh, dh);
    dv.middleRows(head * dh, dh).noalias() = dctx * p;
    const Matrix dp = dctx.transpose() * cache.v.middleRows(head * dh, dh);
    const Eigen::VectorXd row_dot = (dp.array() * p.array()).rowwise().sum();
    const Matrix ds = ((dp.colwise() - row_dot).array() * p.array()).matrix() * scale;
    dq.middleRows(head * dh, dh).noalias() = cache.k.middleRows(head * dh, dh) * ds.transpose();
    dk.middleRows(head * dh, dh).noalias() = cache.q.middleRows(head * dh, dh) * ds;
  }
  grad->wq.noalias() += dq * cache.normed.transpose();
  grad->wk.noalias() += dk * cache.normed.transpose();
  grad->wv.noalias() += dv * cache.normed.transpose();
  grad->bq += dq.rowwise().sum();
  grad->bk += dk.rowwise().sum();
  grad->bv += dv.rowwise().sum();
  Matrix d_normed = params.wq.transpose() * dq;
  d_normed.noalias() += params.wk.transpose() * dk;
  d_normed.noalias() += params.wv.transpose() * dv;

  grad->ln_gain += (d_normed.array() * cache.xhat.array()).rowwise().sum().matrix();
  grad->ln_bias += d_normed.rowwise().sum();
  const Matrix d_xhat = params.ln_gain.asDiagonal() * d_normed;
  const Eigen::RowVectorXd mean_d = d_xhat.colwise().mean();
  const Eigen::RowVectorXd mean_dx = (d_xhat.array() * cache.xhat.array()).colwise().mean();
  Matrix d_states = d_out;
  for (Eigen::Index j = 0; j < n; ++j) {
    d_states.col(j) += cache.inv_std[j] *
                       (d_xhat.col(j).array() - mean_d[j] - cache.xhat.col(j).array() * mean_dx[j]).matrix();
  }
  return d_states;
}

}  // namespace ftm
