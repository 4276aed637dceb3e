// include/ftm/kt-training.h

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

#ifndef FTM_KT_TRAINING_H_
#define FTM_KT_TRAINING_H_

#include <span>
#include <vector>

#include "ftm/student-net.h"
#include "ftm/utterance.h"

namespace ftm {

// Frames [0, mask_prefix_frames) carry no loss; every later frame is
// labeled with the utterance class.
struct FrameLabeling {
  int class_label = kFalseTrigger;
  int mask_prefix_frames = kUnlabeledPrefixFrames;
};

struct LossBreakdown {
  double total = 0.0;
  double bce = 0.0;  // mean over labeled frames
  double mse = 0.0;  // mean over labeled frames and embedding dims
};

/// total = bce + alpha * mse over frames [prefix, T). teacher may be null
/// only when alpha == 0, in which case mse is reported as 0.
/// Errors: T <= prefix -> kUtteranceTooShort; non-finite or wrongly sized
/// teacher -> kInvalidTarget; null teacher with alpha > 0 -> kMissingTarget.
LossBreakdown CombinedLoss(const MitigationSignal &signal, const Matrix &embeddings,
                           const FrameLabeling &labeling, const Vector *teacher, double alpha);

struct TrainExample {
  const FeatureSequence *features = nullptr;
  int class_label = kFalseTrigger;
  const Vector *teacher = nullptr;  // required when alpha > 0
};

/// Batched, zero-padded forward/backward. Returns the mean CombinedLoss over
/// the examples; when grad is non-null, accumulates the gradient of that mean.
double BatchLoss(const StudentModel &model, std::span<const TrainExample> batch, double alpha,
                 StudentModel *grad = nullptr);

struct StudentTrainConfig {
  double alpha = 0.1;
  TrainingOptions options;
  // Utterances are sorted by length inside windows of this many batches
  // before being cut into batches.
  int bucket_batches = 16;
  // Threads used for CV scoring. Results do not depend on this value.
  int eval_threads = 1;
};

/// Target for an utterance: its own teacher_embedding if set, else the
/// table entry, else null.
const Vector *FindTarget(const UtteranceRecord &record, const EmbeddingTable *table);

/// Trains with the combined objective and returns the checkpoint with the
/// best CV AUC on last-frame scores (the initialization counts as epoch 0).
/// alpha = 0 trains the baseline without any teacher targets.
StudentModel TrainStudent(std::span<const UtteranceRecord> train,
                          std::span<const UtteranceRecord> cv, const EmbeddingTable *targets,
                          const StudentConfig &model_cfg, const StudentTrainConfig &cfg,
                          std::vector<EpochLogEntry> *log = nullptr);

/// AUC of last-frame scores.
double LastFrameAuc(const StudentModel &model, std::span<const UtteranceRecord> records,
                    int num_threads = 1);

struct AlphaTrial {
  double alpha;
  double cv_auc;
};

/// Trains one student per candidate and returns the alpha with the highest
/// CV AUC; ties go to the smaller alpha. Throws kNoCandidates when empty.
double TuneAlpha(std::span<const UtteranceRecord> train, std::span<const UtteranceRecord> cv,
                 const EmbeddingTable *targets, const StudentConfig &model_cfg,
                 const StudentTrainConfig &cfg, std::span<const double> candidates,
                 std::vector<AlphaTrial> *trials = nullptr);

}  // namespace ftm

#endif  // FTM_KT_TRAINING_H_
