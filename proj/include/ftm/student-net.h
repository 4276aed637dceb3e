// include/ftm/student-net.h

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

#ifndef FTM_STUDENT_NET_H_
#define FTM_STUDENT_NET_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ftm/feature-fbank.h"
#include "ftm/nnet-lstm.h"
#include "ftm/streaming-decision.h"
#include "ftm/utterance.h"

namespace ftm {

struct StudentConfig {
  int input_dim = kNumMelBins;
  int hidden_dim = 128;
  int num_layers = 4;
  int embedding_dim = 64;
};

/// Closed-form parameter count: LSTM stack + linear embedding head +
/// 1-unit classifier head.
int64_t StudentParamCount(const StudentConfig &cfg);

// Unidirectional LSTM stack -> linear embedding head -> logistic classifier
// on the embedding.
struct StudentModel {
  std::vector<LstmLayerParams> lstm;
  AffineParams embedding;   // embedding_dim x hidden
  AffineParams classifier;  // 1 x embedding_dim

  static StudentModel Zeros(const StudentConfig &cfg);
  static StudentModel Create(const StudentConfig &cfg, uint64_t seed);

  StudentConfig Config() const;
  TensorList Tensors();
  ConstTensorList Tensors() const;
};

/// Exact scalar count over every tensor of the model.
int64_t CountParameters(const StudentModel &model);

struct StreamState {
  std::vector<LstmState> layers;
  int64_t frames_seen = 0;

  static StreamState Initial(const StudentModel &model);
};

struct StepOutput {
  Vector embedding;
  double score = 0.5;
};

/// Advances one live stream by one frame. Throws kInvalidFrame for a
/// non-finite frame and kShape for a wrong dimension.
StepOutput StudentStep(const StudentModel &model, StreamState *state,
                       const Eigen::Ref<const Vector> &frame);

struct StudentOutput {
  Matrix embeddings;  // T x embedding_dim
  MitigationSignal signal;
};

/// Folds StudentStep over every frame from the zero state. The signal onset
/// is the detection event, kUnlabeledPrefixFrames after features.onset_frame.
StudentOutput StudentForward(const StudentModel &model, const FeatureSequence &features);

/// Mitigation signals for a set of utterances. Each utterance is scored
/// independently. The result does not depend on num_threads.
std::vector<MitigationSignal> ComputeSignals(const StudentModel &model,
                                             std::span<const UtteranceRecord> records,
                                             int num_threads = 1);

void SaveStudent(const std::filesystem::path &path, const StudentModel &model);
StudentModel LoadStudent(const std::filesystem::path &path);

}  // namespace ftm

#endif  // FTM_STUDENT_NET_H_
