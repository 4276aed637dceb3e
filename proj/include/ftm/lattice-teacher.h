// include/ftm/lattice-teacher.h

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

#ifndef FTM_LATTICE_TEACHER_H_
#define FTM_LATTICE_TEACHER_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ftm/lattice.h"
#include "ftm/nnet-attention.h"
#include "ftm/utterance.h"

namespace ftm {

constexpr int kLatticeEmbeddingDim = 64;
constexpr int kNodeScalarFeatures = 4;  // posterior, am, lm, duration
constexpr int kWordEmbeddingDim = kLatticeEmbeddingDim - kNodeScalarFeatures;
constexpr int kTeacherHeads = 4;

struct TeacherConfig {
  int vocab_size = 500;
  int num_layers = 2;
};

// Simplified lattice graph network: node input = learned word embedding
// (60 dims) ++ the 4 node scalars, then masked self-attention layers, mean
// pooling over nodes, and a 64 -> 1 logistic classifier.
struct TeacherModel {
  Matrix word_embedding;  // 60 x vocab, one column per word
  std::vector<AttentionLayerParams> layers;
  AffineParams classifier;  // 1 x 64

  static TeacherModel Zeros(const TeacherConfig &cfg);
  static TeacherModel Create(const TeacherConfig &cfg, uint64_t seed);

  int VocabSize() const { return static_cast<int>(word_embedding.cols()); }
  int64_t NumParams() const;
  TensorList Tensors();
  ConstTensorList Tensors() const;
};

/// 64-dim lattice summary; throws kVocab for out-of-range word ids.
Vector LatticeEmbed(const TeacherModel &model, const Lattice &lattice);

/// Post-attention node states (64 x N) whose column mean is the embedding.
Matrix LatticeNodeStates(const TeacherModel &model, const Lattice &lattice);

double TeacherScore(const TeacherModel &model, const Vector &embedding);

/// Utterance BCE of the classifier on this lattice. When grad is non-null
/// the parameter gradient is accumulated into it.
double TeacherLoss(const TeacherModel &model, const Lattice &lattice, int label,
                   TeacherModel *grad = nullptr);

/// Minimizes utterance-level BCE; returns the parameters with the best CV
/// AUC seen (the initialization counts as epoch 0). Throws
/// kDegenerateCorpus if either split lacks a class, kMissingLattice if a
/// record has no lattice.
TeacherModel TrainTeacher(std::span<const UtteranceRecord> train,
                          std::span<const UtteranceRecord> cv, const TeacherConfig &cfg,
                          const TrainingOptions &opts,
                          std::vector<EpochLogEntry> *log = nullptr);

/// Teacher AUC over records (scores from the classifier head).
double TeacherAuc(const TeacherModel &model, std::span<const UtteranceRecord> records);

/// One embedding per record; throws kMissingLattice when a lattice is absent.
EmbeddingTable ExportEmbeddings(const TeacherModel &model,
                                std::span<const UtteranceRecord> records);

// Embedding file ("FTME"): magic | version u32 | count u32 | per record:
// id length u32, UTF-8 id, 64 float32. Little-endian, ids in sorted order.
void SaveEmbeddings(const std::filesystem::path &path, const EmbeddingTable &table);
EmbeddingTable LoadEmbeddings(const std::filesystem::path &path);

void SaveTeacher(const std::filesystem::path &path, const TeacherModel &model);
TeacherModel LoadTeacher(const std::filesystem::path &path);

}  // namespace ftm

#endif  // FTM_LATTICE_TEACHER_H_
