// include/ftm/nnet-attention.h

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

#ifndef FTM_NNET_ATTENTION_H_
#define FTM_NNET_ATTENTION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ftm/nnet-common.h"

namespace ftm {

using AttentionMask = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

// One multi-head self-attention layer with pre-projection layer norm and a
// residual connection:
//   y = x + Wo * concat_h(V_h softmax_masked(Q_h^T K_h / sqrt(d_h))^T) + bo
// where Q, K, V are affine projections of LayerNorm(x). Node states are
// columns.
struct AttentionLayerParams {
  int model_dim = 0;
  int num_heads = 0;
  Vector ln_gain, ln_bias;
  Matrix wq, wk, wv, wo;
  Vector bq, bk, bv, bo;

  static AttentionLayerParams Zeros(int model_dim, int num_heads);
  // Projections uniform(-k, k), k = 1/sqrt(model_dim); gain 1, bias 0.
  void InitRandom(Rng *rng);
  int HeadDim() const { return model_dim / num_heads; }
  int64_t NumParams() const;
  void AppendTensors(const std::string &prefix, TensorList *out);
};

struct AttentionCache {
  Matrix input;
  Matrix xhat;      // normalized input before gain/bias
  Vector inv_std;   // per node
  Matrix normed;
  Matrix q, k, v;
  std::vector<Matrix> probs;  // per head, N x N (row = query node)
  Matrix context;             // concatenated head outputs
};

/// states: model_dim x N. mask(i, j) permits node i to attend to node j.
/// Throws kIsolatedNode if some row of the mask is all false.
Matrix MaskedSelfAttention(const AttentionLayerParams &params, const Matrix &states,
                           const AttentionMask &mask, AttentionCache *cache = nullptr);

/// Accumulates parameter gradients into grad and returns d(states).
Matrix MaskedSelfAttentionBackward(const AttentionLayerParams &params,
                                   const AttentionCache &cache, const Matrix &d_out,
                                   AttentionLayerParams *grad);

}  // namespace ftm

#endif  // FTM_NNET_ATTENTION_H_
