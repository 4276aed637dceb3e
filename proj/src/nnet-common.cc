// src/nnet-common.cc

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

#include "ftm/nnet-common.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ftm/error.h"

namespace ftm {

void AppendTensor(const std::string &name, Matrix *m, TensorList *out) {
  out->push_back({name, m->data(), {static_cast<int>(m->rows()), static_cast<int>(m->cols())}});
}

void AppendTensor(const std::string &name, Vector *v, TensorList *out) {
  out->push_back({name, v->data(), {static_cast<int>(v->size())}});
}

ConstTensorList AsConst(const TensorList &tensors) {
  ConstTensorList out;
  out.reserve(tensors.size());
  for (const auto &t : tensors) out.push_back({t.name, t.data, t.dims});
  return out;
}

int64_t TotalSize(const ConstTensorList &tensors) {
  int64_t n = 0;
  for (const auto &t : tensors) n += t.size();
  return n;
}

void SetZero(const TensorList &tensors) {
  for (const auto &t : tensors) std::fill(t.data, t.data + t.size(), 0.0);
}

void ScaleTensors(const TensorList &tensors, double factor) {
  for (const auto &t : tensors)
    for (int64_t i = 0; i < t.size(); ++i) t.data[i] *= factor;
}

double GlobalNorm(const ConstTensorList &tensors) {
  double sum = 0.0;
  for (const auto &t : tensors)
    for (int64_t i = 0; i < t.size(); ++i) sum += t.data[i] * t.data[i];
  return std::sqrt(sum);
}

bool AllFinite(const ConstTensorList &tensors) {
  for (const auto &t : tensors)
    for (int64_t i = 0; i < t.size(); ++i)
      if (!std::isfinite(t.data[i])) return false;
  return true;
}

void CopyTensors(const ConstTensorList &from, const TensorList &to) {
  if (from.size() != to.size()) throw Error(ErrorKind::kShape, "tensor list size mismatch");
  for (size_t i = 0; i < from.size(); ++i) {
    if (from[i].dims != to[i].dims)
      throw Error(ErrorKind::kShape, "tensor shape mismatch for " + to[i].name);
    std::copy(from[i].data, from[i].data + from[i].size(), to[i].data);
  }
}

void InitUniform(Matrix *m, double k, Rng *rng) {
  std::uniform_real_distribution<double> dist(-k, k);
  // Row-major fill order.
  for (Eigen::Index r = 0; r < m->rows(); ++r)
    for (Eigen::Index c = 0; c < m->cols(); ++c) (*m)(r, c) = dist(*rng);
}

void InitUniform(Vector *v, double k, Rng *rng) {
  std::uniform_real_distribution<double> dist(-k, k);
  for (Eigen::Index i = 0; i < v->size(); ++i) (*v)[i] = dist(*rng);
}

AffineParams AffineParams::Zeros(int out_dim, int in_dim) {
  return {Matrix::Zero(out_dim, in_dim), Vector::Zero(out_dim)};
}

void AffineParams::AppendTensors(const std::string &prefix, TensorList *out) {
  AppendTensor(prefix + ".weight", &weight, out);
  AppendTensor(prefix + ".bias", &bias, out);
}

AdamOptimizer::AdamOptimizer(const AdamOptions &opts, int64_t num_params)
    : opts_(opts), m_(num_params, 0.0), v_(num_params, 0.0) {}

void AdamOptimizer::Step(const TensorList &params, const ConstTensorList &grads) {
  if (params.size() != grads.size() || TotalSize(AsConst(params)) != static_cast<int64_t>(m_.size()))
    throw Error(ErrorKind::kShape, "optimizer layout mismatch");
  double scale = 1.0;
  if (opts_.clip_norm > 0.0) {
    const double norm = GlobalNorm(grads);
    if (!std::isfinite(norm)) throw Error(ErrorKind::kNumeric, "non-finite gradient");
    if (norm > opts_.clip_norm) scale = opts_.clip_norm / norm;
  }
  ++steps_;
  const double bias1 = 1.0 - std::pow(opts_.beta1, static_cast<double>(steps_));
  const double bias2 = 1.0 - std::pow(opts_.beta2, static_cast<double>(steps_));
  size_t offset = 0;
  for (size_t t = 0; t < params.size(); ++t) {
    const int64_t n = params[t].size();
    for (int64_t i = 0; i < n; ++i, ++offset) {
      const double g = grads[t].data[i] * scale;
      m_[offset] = opts_.beta1 * m_[offset] + (1.0 - opts_.beta1) * g;
      v_[offset] = opts_.beta2 * v_[offset] + (1.0 - opts_.beta2) * g * g;
      const double m_hat = m_[offset] / bias1;
      const double v_hat = v_[offset] / bias2;
      params[t].data[i] -= opts_.learning_rate * m_hat / (std::sqrt(v_hat) + opts_.epsilon);
    }
  }
}

void WriteEpochLogCsv(const std::string &path, const std::vector<EpochLogEntry> &log) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  os << "epoch,train_loss,cv_auc\n";
  char buf[128];
  for (const auto &e : log) {
    std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f\n", e.epoch, e.train_loss, e.cv_auc);
    os << buf;
  }
  if (!os) throw Error(ErrorKind::kIo, "write failed: " + path);
}

}  // namespace ftm
