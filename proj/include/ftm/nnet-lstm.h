// include/ftm/nnet-lstm.h

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

#ifndef FTM_NNET_LSTM_H_
#define FTM_NNET_LSTM_H_

#include <cstdint>
#include <string>

#include "ftm/nnet-common.h"

namespace ftm {

// Gate blocks are stacked in the order (input, forget, cell, output):
//   z = W x + U h + b
//   i = sigmoid(z_i), f = sigmoid(z_f), g = tanh(z_g), o = sigmoid(z_o)
//   c' = f * c + i * g,  h' = o * tanh(c')
struct LstmLayerParams {
  int input_dim = 0;
  int hidden_dim = 0;
  Matrix w;  // 4*hidden x input
  Matrix u;  // 4*hidden x hidden
  Vector b;  // 4*hidden

  static LstmLayerParams Zeros(int input_dim, int hidden_dim);
  // Uniform(-k, k) with k = 1/sqrt(hidden), then forget-gate bias = 1.
  void InitRandom(Rng *rng);
  int64_t NumParams() const { return w.size() + u.size() + b.size(); }
  void AppendTensors(const std::string &prefix, TensorList *out);
};

constexpr int64_t LstmParamCount(int64_t input_dim, int64_t hidden_dim) {
  return 4 * (hidden_dim * (input_dim + hidden_dim) + hidden_dim);
}

struct LstmState {
  Vector h;
  Vector c;
  static LstmState Zeros(int hidden_dim) {
    return {Vector::Zero(hidden_dim), Vector::Zero(hidden_dim)};
  }
};

/// One recurrence step. The returned state's h is the layer output.
LstmState LstmStep(const LstmLayerParams &params, const LstmState &state,
                   const Eigen::Ref<const Vector> &x);

// Batched sequence path used by training. B streams of T steps share one
// input matrix of size input_dim x (T*B); column t*B + b is stream b at time
// t. Every stream starts from the zero state.
struct LstmSequenceCache {
  int num_steps = 0;
  int batch = 0;
  Matrix input;      // input_dim x T*B
  Matrix gates;      // 4*hidden x T*B, post-activation
  Matrix cell;       // hidden x T*B
  Matrix tanh_cell;  // hidden x T*B
  Matrix hidden;     // hidden x T*B
};

/// Runs the layer over all steps; returns cache->hidden.
const Matrix &LstmForwardSequence(const LstmLayerParams &params, Matrix input,
                                  int num_steps, int batch, LstmSequenceCache *cache);

/// Backpropagation through time. d_hidden is the loss gradient w.r.t. every
/// output column. Parameter gradients are accumulated into grad; the
/// gradient w.r.t. the input matrix is returned.
Matrix LstmBackwardSequence(const LstmLayerParams &params, const LstmSequenceCache &cache,
                            const Matrix &d_hidden, LstmLayerParams *grad);

}  // namespace ftm

#endif  // FTM_NNET_LSTM_H_
