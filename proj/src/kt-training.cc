// src/kt-training.cc

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

#include "ftm/kt-training.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ftm/error.h"
#include "ftm/ftm-metrics.h"

namespace ftm {

namespace {

void CheckTarget(const Vector *teacher, Eigen::Index dim, double alpha) {
  if (!teacher) {
    if (alpha > 0.0) throw Error(ErrorKind::kMissingTarget, "alpha > 0 needs a teacher embedding");
    return;
  }
  if (teacher->size() != dim || !teacher->allFinite())
    throw Error(ErrorKind::kInvalidTarget, "teacher embedding must be finite and match the embedding dim");
}

void RequireBothClasses(std::span<const UtteranceRecord> records, const char *split) {
  bool has[2] = {false, false};
  for (const auto &r : records) has[r.class_label == kTrueTrigger] = true;
  if (!has[0] || !has[1])
    throw Error(ErrorKind::kDegenerateCorpus, std::string(split) + " split lacks a class");
}

}  // namespace

LossBreakdown CombinedLoss(const MitigationSignal &signal, const Matrix &embeddings,
                           const FrameLabeling &labeling, const Vector *teacher, double alpha) {
  const int num_frames = signal.NumFrames();
  const int first = labeling.mask_prefix_frames;
  if (num_frames <= first)
    throw Error(ErrorKind::kUtteranceTooShort, std::to_string(num_frames) + " frames");
  if (embeddings.rows() != num_frames) throw Error(ErrorKind::kShape, "embedding rows != frames");
  if (!(alpha >= 0.0)) throw Error(ErrorKind::kConfig, "alpha must be >= 0");
  CheckTarget(teacher, embeddings.cols(), alpha);

  const int labeled = num_frames - first;
  LossBreakdown out;
  for (int t = first; t < num_frames; ++t) out.bce += BinaryCrossEntropy(signal.scores[t], labeling.class_label);
  out.bce /= labeled;
  if (teacher) {
    const auto diff = embeddings.bottomRows(labeled).rowwise() - teacher->transpose();
    out.mse = diff.squaredNorm() / (static_cast<double>(labeled) * embeddings.cols());
  }
  out.total = out.bce + alpha * out.mse;
  return out;
}

double BatchLoss(const StudentModel &model, std::span<const TrainExample> batch, double alpha,
                 StudentModel *grad) {
  if (batch.empty()) throw Error(ErrorKind::kEmptyInput, "empty batch");
  if (!(alpha >= 0.0)) throw Error(ErrorKind::kConfig, "alpha must be >= 0");
  const int b_size = static_cast<int>(batch.size());
  const int input_dim = model.lstm.front().input_dim;
  const int emb_dim = model.embedding.OutputDim();
  int max_frames = 0;
  for (const auto &ex : batch) {
    if (ex.features->NumFrames() <= kUnlabeledPrefixFrames)
      throw Error(ErrorKind::kUtteranceTooShort, std::to_string(ex.features->NumFrames()) + " frames");
    if (ex.features->Dim() != input_dim) throw Error(ErrorKind::kShape, "feature dim");
    CheckTarget(ex.teacher, emb_dim, alpha);
    max_frames = std::max(max_frames, ex.features->NumFrames());
  }

  Matrix input = Matrix::Zero(input_dim, static_cast<Eigen::Index>(max_frames) * b_size);
  for (int b = 0; b < b_size; ++b) {
    const FeatureMatrix &f = batch[b].features->frames;
    for (int t = 0; t < f.rows(); ++t)
      input.col(static_cast<Eigen::Index>(t) * b_size + b) = f.row(t).cast<double>().transpose();
  }
  std::vector<LstmSequenceCache> caches(model.lstm.size());
  for (size_t l = 0; l < model.lstm.size(); ++l) {
    Matrix layer_input = l == 0 ? std::move(input) : caches[l - 1].hidden;
    LstmForwardSequence(model.lstm[l], std::move(layer_input), max_frames, b_size, &caches[l]);
  }
  const Matrix &top = caches.back().hidden;
  Matrix emb = model.embedding.weight * top;
  emb.colwise() += model.embedding.bias;
  const Eigen::RowVectorXd logits =
      (model.classifier.weight.row(0) * emb).array() + model.classifier.bias[0];

  Matrix d_emb;
  Eigen::RowVectorXd d_logits;
  if (grad) {
    d_emb = Matrix::Zero(emb_dim, emb.cols());
    d_logits = Eigen::RowVectorXd::Zero(emb.cols());
  }
  double total = 0.0;
  for (int b = 0; b < b_size; ++b) {
    const TrainExample &ex = batch[b];
    const int labeled = ex.features->NumFrames() - kUnlabeledPrefixFrames;
    double bce = 0.0, mse = 0.0;
    for (int t = kUnlabeledPrefixFrames; t < ex.features->NumFrames(); ++t) {
      const Eigen::Index col = static_cast<Eigen::Index>(t) * b_size + b;
      const double score = ScoreFromLogit(logits[col]);
      bce += BinaryCrossEntropy(score, ex.class_label);
      if (ex.teacher) {
        const Vector diff = emb.col(col) - *ex.teacher;
        mse += diff.squaredNorm();
        if (grad) d_emb.col(col) = (2.0 * alpha / (static_cast<double>(labeled) * emb_dim * b_size)) * diff;
      }
      if (grad) d_logits[col] = BceLogitGradient(score, ex.class_label) / (static_cast<double>(labeled) * b_size);
    }
    const double mse_mean = ex.teacher ? mse / (static_cast<double>(labeled) * emb_dim) : 0.0;
    total += bce / labeled + alpha * mse_mean;
  }
  if (grad) {
    grad->classifier.weight.row(0).noalias() += d_logits * emb.transpose();
    grad->classifier.bias[0] += d_logits.sum();
    d_emb.noalias() += model.classifier.weight.row(0).transpose() * d_logits;
    grad->embedding.weight.noalias() += d_emb * top.transpose();
    grad->embedding.bias += d_emb.rowwise().sum();
    Matrix d_hidden = model.embedding.weight.transpose() * d_emb;
    for (size_t l = model.lstm.size(); l-- > 0;)
      d_hidden = LstmBackwardSequence(model.lstm[l], caches[l], d_hidden, &grad->lstm[l]);
  }
  return total / b_size;
}

const Vector *FindTarget(const UtteranceRecord &record, const EmbeddingTable *table) {
  if (record.teacher_embedding) return &*record.teacher_embedding;
  if (table) {
    auto it = table->find(record.id);
    if (it != table->end()) return &it->second;
  }
  return nullptr;
}

double LastFrameAuc(const StudentModel &model, std::span<const UtteranceRecord> records,
                    int num_threads) {
  const std::vector<MitigationSignal> signals = ComputeSignals(model, records, num_threads);
  std::vector<double> pos, neg;
  for (size_t i = 0; i < records.size(); ++i)
    (records[i].class_label == kTrueTrigger ? pos : neg).push_back(signals[i].scores.back());
  return RocFromScores(pos, neg).auc;
}

StudentModel TrainStudent(std::span<const UtteranceRecord> train,
                          std::span<const UtteranceRecord> cv, const EmbeddingTable *targets,
                          const StudentConfig &model_cfg, const StudentTrainConfig &cfg,
                          std::vector<EpochLogEntry> *log) {
  const TrainingOptions &opts = cfg.options;
  if (!(cfg.alpha >= 0.0)) throw Error(ErrorKind::kConfig, "alpha must be >= 0");
  if (opts.batch_size < 1 || cfg.bucket_batches < 1) throw Error(ErrorKind::kConfig, "batch size must be >= 1");
  RequireBothClasses(train, "training");
  RequireBothClasses(cv, "CV");

  std::vector<TrainExample> examples;
  examples.reserve(train.size());
  for (const auto &r : train) {
    const Vector *target = cfg.alpha > 0.0 ? FindTarget(r, targets) : nullptr;
    if (cfg.alpha > 0.0 && !target) throw Error(ErrorKind::kMissingTarget, r.id);
    if (r.NumFrames() <= kUnlabeledPrefixFrames)
      throw Error(ErrorKind::kUtteranceTooShort, r.id);
    examples.push_back({&r.features, r.class_label, target});
  }

  StudentModel model = StudentModel::Create(model_cfg, opts.seed);
  StudentModel grad = StudentModel::Zeros(model_cfg);
  const TensorList params = model.Tensors();
  const TensorList grads = grad.Tensors();
  AdamOptimizer adam(opts.adam, CountParameters(model));

  StudentModel best = model;
  if (opts.max_epochs <= 0) return best;
  double best_auc = LastFrameAuc(model, cv, cfg.eval_threads);
  int epochs_without_gain = 0;
  Rng rng(opts.seed ^ 0x5d0c1e47ull);
  std::vector<size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  const size_t bucket = static_cast<size_t>(opts.batch_size) * cfg.bucket_batches;

  for (int epoch = 1; epoch <= opts.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t begin = 0; begin < order.size(); begin += bucket) {
      const auto first = order.begin() + begin;
      const auto last = order.begin() + std::min(order.size(), begin + bucket);
      std::stable_sort(first, last, [&](size_t a, size_t b) {
        return examples[a].features->NumFrames() < examples[b].features->NumFrames();
      });
    }
    std::vector<std::vector<TrainExample>> batches;
    for (size_t begin = 0; begin < order.size(); begin += opts.batch_size) {
      std::vector<TrainExample> batch;
      for (size_t k = begin; k < std::min(order.size(), begin + opts.batch_size); ++k)
        batch.push_back(examples[order[k]]);
      batches.push_back(std::move(batch));
    }
    std::shuffle(batches.begin(), batches.end(), rng);

    double loss_sum = 0.0;
    for (const auto &batch : batches) {
      SetZero(grads);
      loss_sum += BatchLoss(model, batch, cfg.alpha, &grad) * batch.size();
      adam.Step(params, AsConst(grads));
    }
    const double cv_auc = LastFrameAuc(model, cv, cfg.eval_threads);
    if (log) log->push_back({epoch, loss_sum / examples.size(), cv_auc});
    if (cv_auc > best_auc) {
      best_auc = cv_auc;
      best = model;
      epochs_without_gain = 0;
    } else if (++epochs_without_gain >= opts.early_stop_patience) {
      break;
    }
  }
  return best;
}

double TuneAlpha(std::span<const UtteranceRecord> train, std::span<const UtteranceRecord> cv,
                 const EmbeddingTable *targets, const StudentConfig &model_cfg,
                 const StudentTrainConfig &cfg, std::span<const double> candidates,
                 std::vector<AlphaTrial> *trials) {
  if (candidates.empty()) throw Error(ErrorKind::kNoCandidates, "");
  std::vector<double> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());
  double best_alpha = sorted.front();
  double best_auc = -1.0;
  for (double alpha : sorted) {
    StudentTrainConfig trial_cfg = cfg;
    trial_cfg.alpha = alpha;
    const StudentModel model = TrainStudent(train, cv, targets, model_cfg, trial_cfg);
    const double auc = LastFrameAuc(model, cv, cfg.eval_threads);
    if (trials) trials->push_back({alpha, auc});
    if (auc > best_auc) {
      best_auc = auc;
      best_alpha = alpha;
    }
  }
  return best_alpha;
}

}  // namespace ftm
