// src/student-net.cc

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

#include "ftm/student-net.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ftm/error.h"
#include "ftm/tensor-io.h"

namespace ftm {

int64_t StudentParamCount(const StudentConfig &cfg) {
  int64_t n = LstmParamCount(cfg.input_dim, cfg.hidden_dim);
  n += (cfg.num_layers - 1) * LstmParamCount(cfg.hidden_dim, cfg.hidden_dim);
  n += static_cast<int64_t>(cfg.embedding_dim) * cfg.hidden_dim + cfg.embedding_dim;
  n += cfg.embedding_dim + 1;
  return n;
}

StudentModel StudentModel::Zeros(const StudentConfig &cfg) {
  if (cfg.input_dim <= 0 || cfg.hidden_dim <= 0 || cfg.num_layers <= 0 || cfg.embedding_dim <= 0)
    throw Error(ErrorKind::kConfig, "student dimensions must be positive");
  StudentModel m;
  for (int l = 0; l < cfg.num_layers; ++l)
    m.lstm.push_back(LstmLayerParams::Zeros(l == 0 ? cfg.input_dim : cfg.hidden_dim, cfg.hidden_dim));
  m.embedding = AffineParams::Zeros(cfg.embedding_dim, cfg.hidden_dim);
  m.classifier = AffineParams::Zeros(1, cfg.embedding_dim);
  return m;
}

StudentModel StudentModel::Create(const StudentConfig &cfg, uint64_t seed) {
  StudentModel m = Zeros(cfg);
  Rng rng(seed);
  for (auto &layer : m.lstm) layer.InitRandom(&rng);
  const double k_embed = 1.0 / std::sqrt(static_cast<double>(cfg.hidden_dim));
  InitUniform(&m.embedding.weight, k_embed, &rng);
  InitUniform(&m.embedding.bias, k_embed, &rng);
  const double k_cls = 1.0 / std::sqrt(static_cast<double>(cfg.embedding_dim));
  InitUniform(&m.classifier.weight, k_cls, &rng);
  InitUniform(&m.classifier.bias, k_cls, &rng);
  return m;
}

StudentConfig StudentModel::Config() const {
  return {lstm.front().input_dim, lstm.front().hidden_dim, static_cast<int>(lstm.size()),
          embedding.OutputDim()};
}

TensorList StudentModel::Tensors() {
  TensorList out;
  for (size_t l = 0; l < lstm.size(); ++l) lstm[l].AppendTensors("student.lstm." + std::to_string(l), &out);
  embedding.AppendTensors("student.embedding", &out);
  classifier.AppendTensors("student.classifier", &out);
  return out;
}

ConstTensorList StudentModel::Tensors() const {
  return AsConst(const_cast<StudentModel *>(this)->Tensors());
}

int64_t CountParameters(const StudentModel &model) { return TotalSize(model.Tensors()); }

StreamState StreamState::Initial(const StudentModel &model) {
  StreamState s;
  for (const auto &layer : model.lstm) s.layers.push_back(LstmState::Zeros(layer.hidden_dim));
  return s;
}

StepOutput StudentStep(const StudentModel &model, StreamState *state,
                       const Eigen::Ref<const Vector> &frame) {
  if (frame.size() != model.lstm.front().input_dim)
    throw Error(ErrorKind::kShape, "frame dimension " + std::to_string(frame.size()));
  if (!frame.allFinite()) throw Error(ErrorKind::kInvalidFrame, "non-finite feature value");
  if (state->layers.size() != model.lstm.size()) throw Error(ErrorKind::kShape, "stream state depth");
  Vector x = frame;
  for (size_t l = 0; l < model.lstm.size(); ++l) {
    state->layers[l] = LstmStep(model.lstm[l], state->layers[l], x);
    x = state->layers[l].h;
  }
  StepOutput out;
  out.embedding = model.embedding.weight * x + model.embedding.bias;
  out.score = ScoreFromLogit(model.classifier.weight.row(0).dot(out.embedding) +
                             model.classifier.bias[0]);
  ++state->frames_seen;
  return out;
}

StudentOutput StudentForward(const StudentModel &model, const FeatureSequence &features) {
  const int num_frames = features.NumFrames();
  if (num_frames == 0) throw Error(ErrorKind::kEmptyInput, "no frames");
  StudentOutput out;
  out.embeddings.resize(num_frames, model.embedding.OutputDim());
  out.signal.scores.resize(num_frames);
  out.signal.onset_frame = features.onset_frame + kUnlabeledPrefixFrames;
  StreamState state = StreamState::Initial(model);
  for (int t = 0; t < num_frames; ++t) {
    const Vector frame = features.frames.row(t).cast<double>().transpose();
    StepOutput step = StudentStep(model, &state, frame);
    out.embeddings.row(t) = step.embedding.transpose();
    out.signal.scores[t] = step.score;
  }
  return out;
}

std::vector<MitigationSignal> ComputeSignals(const StudentModel &model,
                                             std::span<const UtteranceRecord> records,
                                             int num_threads) {
  std::vector<MitigationSignal> signals(records.size());
  auto work = [&](size_t begin, size_t stride) {
    for (size_t i = begin; i < records.size(); i += stride)
      signals[i] = StudentForward(model, records[i].features).signal;
  };
  const size_t workers = std::clamp<size_t>(num_threads, 1, std::max<size_t>(records.size(), 1));
  if (workers == 1) {
    work(0, 1);
    return signals;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        work(w, workers);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto &th : pool) th.join();
  for (const auto &e : errors)
    if (e) std::rethrow_exception(e);
  return signals;
}

void SaveStudent(const std::filesystem::path &path, const StudentModel &model) {
  SaveTensors(path, model.Tensors());
}

StudentModel LoadStudent(const std::filesystem::path &path) {
  const std::vector<StoredTensor> stored = LoadTensors(path);
  StudentConfig cfg;
  const StoredTensor &w0 = FindTensor(stored, "student.lstm.0.w");
  const StoredTensor &emb = FindTensor(stored, "student.embedding.weight");
  if (w0.dims.size() != 2 || w0.dims[0] % 4 != 0 || emb.dims.size() != 2)
    throw Error(ErrorKind::kFormat, "bad student tensor shapes");
  cfg.hidden_dim = w0.dims[0] / 4;
  cfg.input_dim = w0.dims[1];
  cfg.embedding_dim = emb.dims[0];
  cfg.num_layers = 0;
  while (std::any_of(stored.begin(), stored.end(), [&](const StoredTensor &t) {
    return t.name == "student.lstm." + std::to_string(cfg.num_layers) + ".w";
  }))
    ++cfg.num_layers;
  StudentModel model = StudentModel::Zeros(cfg);
  AssignTensors(stored, model.Tensors());
  return model;
}

}  // namespace ftm
