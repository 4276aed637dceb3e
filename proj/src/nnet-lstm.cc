// src/nnet-lstm.cc

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

#include "ftm/nnet-lstm.h"

#include <cmath>

#include "ftm/error.h"

namespace ftm {

namespace {

// Applies the gate nonlinearities in place on a 4*hidden x B block.
void ActivateGates(int hidden, Eigen::Ref<Matrix> z) {
  z.topRows(2 * hidden) = z.topRows(2 * hidden).unaryExpr([](double v) { return Sigmoid(v); });
  z.middleRows(2 * hidden, hidden) = z.middleRows(2 * hidden, hidden).array().tanh();
  z.bottomRows(hidden) = z.bottomRows(hidden).unaryExpr([](double v) { return Sigmoid(v); });
}

}  // namespace

LstmLayerParams LstmLayerParams::Zeros(int input_dim, int hidden_dim) {
  if (input_dim <= 0 || hidden_dim <= 0)
    throw Error(ErrorKind::kShape, "LSTM dims must be positive");
  LstmLayerParams p;
  p.input_dim = input_dim;
  p.hidden_dim = hidden_dim;
  p.w = Matrix::Zero(4 * hidden_dim, input_dim);
  p.u = Matrix::Zero(4 * hidden_dim, hidden_dim);
  p.b = Vector::Zero(4 * hidden_dim);
  return p;
}

void LstmLayerParams::InitRandom(Rng *rng) {
  const double k = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
  InitUniform(&w, k, rng);
  InitUniform(&u, k, rng);
  InitUniform(&b, k, rng);
  b.segment(hidden_dim, hidden_dim).setOnes();
}

void LstmLayerParams::AppendTensors(const std::string &prefix, TensorList *out) {
  AppendTensor(prefix + ".w", &w, out);
  AppendTensor(prefix + ".u", &u, out);
  AppendTensor(prefix + ".b", &b, out);
}

LstmState LstmStep(const LstmLayerParams &params, const LstmState &state,
                   const Eigen::Ref<const Vector> &x) {
  const int h = params.hidden_dim;
  if (x.size() != params.input_dim || state.h.size() != h || state.c.size() != h)
    throw Error(ErrorKind::kShape, "LSTM step dimension mismatch");
  Matrix z = params.w * x + params.u * state.h + params.b;
  ActivateGates(h, z);
  LstmState next;
  next.c = z.col(0).segment(h, h).cwiseProduct(state.c) +
           z.col(0).head(h).cwiseProduct(z.col(0).segment(2 * h, h));
  next.h = z.col(0).tail(h).cwiseProduct(next.c.array().tanh().matrix());
  return next;
}

const Matrix &LstmForwardSequence(const LstmLayerParams &params, Matrix input,
                                  int num_steps, int batch, LstmSequenceCache *cache) {
  const int h = params.hidden_dim;
  if (input.rows() != params.input_dim || input.cols() != static_cast<Eigen::Index>(num_steps) * batch)
    throw Error(ErrorKind::kShape, "LSTM sequence input shape mismatch");
  cache->num_steps = num_steps;
  cache->batch = batch;
  cache->input = std::move(input);
  cache->gates.noalias() = params.w * cache->input;
  cache->gates.colwise() += params.b;
  cache->cell.resize(h, cache->input.cols());
  cache->tanh_cell.resize(h, cache->input.cols());
  cache->hidden.resize(h, cache->input.cols());
  for (int t = 0; t < num_steps; ++t) {
    auto z = cache->gates.middleCols(static_cast<Eigen::Index>(t) * batch, batch);
    if (t > 0) z.noalias() += params.u * cache->hidden.middleCols(static_cast<Eigen::Index>(t - 1) * batch, batch);
    ActivateGates(h, z);
    auto c = cache->cell.middleCols(static_cast<Eigen::Index>(t) * batch, batch);
    c = z.topRows(h).cwiseProduct(z.middleRows(2 * h, h));
    if (t > 0)
      c += z.middleRows(h, h).cwiseProduct(cache->cell.middleCols(static_cast<Eigen::Index>(t - 1) * batch, batch));
    auto tc = cache->tanh_cell.middleCols(static_cast<Eigen::Index>(t) * batch, batch);
    tc = c.array().tanh();
    cache->hidden.middleCols(static_cast<Eigen::Index>(t) * batch, batch) = z.bottomRows(h).cwiseProduct(tc);
  }
  return cache->hidden;
}

Matrix LstmBackwardSequence(const LstmLayerParams &params, const LstmSequenceCache &cache,
                            const Matrix &d_hidden, LstmLayerParams *grad) {
  const int h = params.hidden_dim;
  const int num_steps = cache.num_steps;
  const int batch = cache.batch;
  if (d_hidden.rows() != h || d_hidden.cols() != cache.hidden.cols())
    throw Error(ErrorKind::kShape, "LSTM backward gradient shape mismatch");
  Matrix d_gates(4 * h, cache.hidden.cols());
  Matrix dh_next = Matrix::Zero(h, batch);
  Matrix dc_next = Matrix::Zero(h, batch);
  for (int t = num_steps - 1; t >= 0; --t) {
    const Eigen::Index col = static_cast<Eigen::Index>(t) * batch;
    const auto gates = cache.gates.middleCols(col, batch);
    const auto i = gates.topRows(h).array();
    const auto f = gates.middleRows(h, h).array();
    const auto g = gates.middleRows(2 * h, h).array();
    const auto o = gates.bottomRows(h).array();
    const auto tc = cache.tanh_cell.middleCols(col, batch).array();

    const Matrix dh = d_hidden.middleCols(col, batch) + dh_next;
    const Eigen::ArrayXXd dc = dh.array() * o * (1.0 - tc.square()) + dc_next.array();
    auto dz = d_gates.middleCols(col, batch);
    dz.topRows(h) = (dc * g * i * (1.0 - i)).matrix();
    if (t > 0) {
      const auto c_prev = cache.cell.middleCols(col - batch, batch).array();
      dz.middleRows(h, h) = (dc * c_prev * f * (1.0 - f)).matrix();
    } else {
      dz.middleRows(h, h).setZero();
    }
    dz.middleRows(2 * h, h) = (dc * i * (1.0 - g.square())).matrix();
    dz.bottomRows(h) = (dh.array() * tc * o * (1.0 - o)).matrix();
    dc_next = (dc * f).matrix();
    dh_next.noalias() = params.u.transpose() * dz;
  }
  grad->w.noalias() += d_gates * cache.input.transpose();
  grad->b += d_gates.rowwise().sum();
  if (num_steps > 1) {
    const Eigen::Index n = static_cast<Eigen::Index>(num_steps - 1) * batch;
    grad->u.noalias() += d_gates.rightCols(n) * cache.hidden.leftCols(n).transpose();
  }
  return params.w.transpose() * d_gates;
}

}  // namespace ftm
