// include/ftm/nnet-common.h

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

#ifndef FTM_NNET_COMMON_H_
#define FTM_NNET_COMMON_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ftm {

// Training math runs in double precision throughout.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Rng = std::mt19937_64;

// A named view into one parameter tensor. Storage is Eigen column-major, so
// for a rank-2 tensor element (r, c) lives at data[c * dims[0] + r].
template <typename T>
struct BasicTensorRef {
  std::string name;
  T *data = nullptr;
  std::vector<int> dims;

  int64_t size() const {
    int64_t n = 1;
    for (int d : dims) n *= d;
    return n;
  }
};
using TensorRef = BasicTensorRef<double>;
using ConstTensorRef = BasicTensorRef<const double>;
using TensorList = std::vector<TensorRef>;
using ConstTensorList = std::vector<ConstTensorRef>;

void AppendTensor(const std::string &name, Matrix *m, TensorList *out);
void AppendTensor(const std::string &name, Vector *v, TensorList *out);
ConstTensorList AsConst(const TensorList &tensors);

int64_t TotalSize(const ConstTensorList &tensors);
void SetZero(const TensorList &tensors);
void ScaleTensors(const TensorList &tensors, double factor);
// Euclidean norm over every entry of every tensor.
double GlobalNorm(const ConstTensorList &tensors);
bool AllFinite(const ConstTensorList &tensors);
// Copies values between two lists of identical layout.
void CopyTensors(const ConstTensorList &from, const TensorList &to);

inline double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Logit clamp that keeps the sigmoid strictly inside (0, 1) in double
// precision.
constexpr double kMaxLogit = 30.0;
inline double ScoreFromLogit(double logit) {
  return Sigmoid(std::clamp(logit, -kMaxLogit, kMaxLogit));
}

// Binary cross entropy on a probability clamped to [kBceClamp, 1 - kBceClamp].
constexpr double kBceClamp = 1e-7;
inline double BinaryCrossEntropy(double score, int label) {
  const double s = std::clamp(score, kBceClamp, 1.0 - kBceClamp);
  return label ? -std::log(s) : -std::log1p(-s);
}
// d BCE / d logit for score = sigmoid(logit); zero where the clamp is active.
inline double BceLogitGradient(double score, int label) {
  if (score < kBceClamp || score > 1.0 - kBceClamp) return 0.0;
  return score - static_cast<double>(label);
}

void InitUniform(Matrix *m, double k, Rng *rng);
void InitUniform(Vector *v, double k, Rng *rng);

/// y = W x + b.
struct AffineParams {
  Matrix weight;
  Vector bias;

  static AffineParams Zeros(int out_dim, int in_dim);
  int OutputDim() const { return static_cast<int>(weight.rows()); }
  int InputDim() const { return static_cast<int>(weight.cols()); }
  int64_t NumParams() const { return weight.size() + bias.size(); }
  void AppendTensors(const std::string &prefix, TensorList *out);
};

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double clip_norm = 5.0;  // global gradient norm; <= 0 disables
};

// Adaptive moment estimation over a flat parameter layout. The gradient is
// rescaled to clip_norm first when its global norm exceeds it.
class AdamOptimizer {
 public:
  AdamOptimizer(const AdamOptions &opts, int64_t num_params);
  void Step(const TensorList &params, const ConstTensorList &grads);
  int64_t steps() const { return steps_; }

 private:
  AdamOptions opts_;
  std::vector<double> m_, v_;
  int64_t steps_ = 0;
};

struct TrainingOptions {
  AdamOptions adam;
  int batch_size = 32;
  int max_epochs = 30;
  int early_stop_patience = 5;  // epochs without CV AUC gain
  uint64_t seed = 1;
};

struct EpochLogEntry {
  int epoch;
  double train_loss;
  double cv_auc;
};

// "epoch,train_loss,cv_auc" with 6 decimals.
void WriteEpochLogCsv(const std::string &path, const std::vector<EpochLogEntry> &log);

}  // namespace ftm

#endif  // FTM_NNET_COMMON_H_
