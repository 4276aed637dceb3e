// src/lattice-teacher.cc

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

#include "ftm/lattice-teacher.h"

#include <algorithm>
#include <numeric>

#include "ftm/binary-io.h"
#include "ftm/error.h"
#include "ftm/ftm-metrics.h"
#include "ftm/tensor-io.h"

namespace ftm {

namespace {

constexpr char kEmbeddingMagic[] = "FTME";
constexpr uint32_t kEmbeddingVersion = 1;

Matrix NodeInputs(const TeacherModel &model, const Lattice &lattice) {
  const int n = lattice.NumNodes();
  Matrix x(kLatticeEmbeddingDim, n);
  for (int i = 0; i < n; ++i) {
    const LatticeNode &node = lattice.nodes[i];
    if (node.word_id < 0 || node.word_id >= model.VocabSize())
      throw Error(ErrorKind::kVocab, "word id " + std::to_string(node.word_id) +
                                         " outside vocabulary of " +
                                         std::to_string(model.VocabSize()));
    x.col(i).head(kWordEmbeddingDim) = model.word_embedding.col(node.word_id);
    x.col(i).tail(kNodeScalarFeatures) << node.posterior, node.am_score, node.lm_score,
        node.duration_s;
  }
  return x;
}

struct TeacherForward {
  Matrix node_inputs;
  std::vector<AttentionCache> caches;
  Matrix states;
  Vector embedding;
};

void RunTeacher(const TeacherModel &model, const Lattice &lattice, TeacherForward *fwd) {
  ValidateLattice(lattice);
  const AttentionMask mask = BuildMask(lattice);
  fwd->node_inputs = NodeInputs(model, lattice);
  fwd->caches.resize(model.layers.size());
  fwd->states = fwd->node_inputs;
  for (size_t l = 0; l < model.layers.size(); ++l)
    fwd->states = MaskedSelfAttention(model.layers[l], fwd->states, mask, &fwd->caches[l]);
  fwd->embedding = fwd->states.rowwise().mean();
}

void RequireLattices(std::span<const UtteranceRecord> records) {
  for (const auto &r : records)
    if (!r.lattice) throw Error(ErrorKind::kMissingLattice, r.id);
}

void RequireBothClasses(std::span<const UtteranceRecord> records, const char *split) {
  bool has[2] = {false, false};
  for (const auto &r : records) has[r.class_label == kTrueTrigger] = true;
  if (!has[0] || !has[1])
    throw Error(ErrorKind::kDegenerateCorpus, std::string(split) + " split lacks a class");
}

}  // namespace

TeacherModel TeacherModel::Zeros(const TeacherConfig &cfg) {
  if (cfg.vocab_size <= 0 || cfg.num_layers <= 0)
    throw Error(ErrorKind::kConfig, "teacher vocab and layer count must be positive");
  TeacherModel m;
  m.word_embedding = Matrix::Zero(kWordEmbeddingDim, cfg.vocab_size);
  for (int l = 0; l < cfg.num_layers; ++l)
    m.layers.push_back(AttentionLayerParams::Zeros(kLatticeEmbeddingDim, kTeacherHeads));
  m.classifier = AffineParams::Zeros(1, kLatticeEmbeddingDim);
  return m;
}

TeacherModel TeacherModel::Create(const TeacherConfig &cfg, uint64_t seed) {
  TeacherModel m = Zeros(cfg);
  Rng rng(seed);
  const double k = 1.0 / std::sqrt(static_cast<double>(kLatticeEmbeddingDim));
  InitUniform(&m.word_embedding, k, &rng);
  for (auto &layer : m.layers) layer.InitRandom(&rng);
  InitUniform(&m.classifier.weight, k, &rng);
  InitUniform(&m.classifier.bias, k, &rng);
  return m;
}

int64_t TeacherModel::NumParams() const { return TotalSize(Tensors()); }

TensorList TeacherModel::Tensors() {
  TensorList out;
  AppendTensor("teacher.word_embedding", &word_embedding, &out);
  for (size_t l = 0; l < layers.size(); ++l)
    layers[l].AppendTensors("teacher.attention." + std::to_string(l), &out);
  classifier.AppendTensors("teacher.classifier", &out);
  return out;
}

ConstTensorList TeacherModel::Tensors() const {
  return AsConst(const_cast<TeacherModel *>(this)->Tensors());
}

Matrix LatticeNodeStates(const TeacherModel &model, const Lattice &lattice) {
  TeacherForward fwd;
  RunTeacher(model, lattice, &fwd);
  return fwd.states;
}

Vector LatticeEmbed(const TeacherModel &model, const Lattice &lattice) {
  TeacherForward fwd;
  RunTeacher(model, lattice, &fwd);
  return fwd.embedding;
}

double TeacherScore(const TeacherModel &model, const Vector &embedding) {
  return ScoreFromLogit(model.classifier.weight.row(0).dot(embedding) + model.classifier.bias[0]);
}

double TeacherLoss(const TeacherModel &model, const Lattice &lattice, int label,
                   TeacherModel *grad) {
  TeacherForward fwd;
  RunTeacher(model, lattice, &fwd);
  const double score = TeacherScore(model, fwd.embedding);
  const double loss = BinaryCrossEntropy(score, label);
  if (!grad) return loss;

  const double d_logit = BceLogitGradient(score, label);
  grad->classifier.weight.row(0) += d_logit * fwd.embedding.transpose();
  grad->classifier.bias[0] += d_logit;
  const Eigen::Index n = fwd.states.cols();
  const Vector d_embedding = model.classifier.weight.row(0).transpose() * d_logit;
  Matrix d_states = d_embedding.replicate(1, n) / static_cast<double>(n);
  for (size_t l = model.layers.size(); l-- > 0;)
    d_states = MaskedSelfAttentionBackward(model.layers[l], fwd.caches[l], d_states, &grad->layers[l]);
  for (Eigen::Index i = 0; i < n; ++i)
    grad->word_embedding.col(lattice.nodes[i].word_id) += d_states.col(i).head(kWordEmbeddingDim);
  return loss;
}

double TeacherAuc(const TeacherModel &model, std::span<const UtteranceRecord> records) {
  RequireLattices(records);
  std::vector<double> pos, neg;
  for (const auto &r : records) {
    const double s = TeacherScore(model, LatticeEmbed(model, *r.lattice));
    (r.class_label == kTrueTrigger ? pos : neg).push_back(s);
  }
  return RocFromScores(pos, neg).auc;
}

TeacherModel TrainTeacher(std::span<const UtteranceRecord> train,
                          std::span<const UtteranceRecord> cv, const TeacherConfig &cfg,
                          const TrainingOptions &opts, std::vector<EpochLogEntry> *log) {
  RequireLattices(train);
  RequireLattices(cv);
  RequireBothClasses(train, "training");
  RequireBothClasses(cv, "CV");
  if (opts.batch_size < 1) throw Error(ErrorKind::kConfig, "batch size must be >= 1");

  TeacherModel model = TeacherModel::Create(cfg, opts.seed);
  TeacherModel grad = TeacherModel::Zeros(cfg);
  const TensorList params = model.Tensors();
  const TensorList grads = grad.Tensors();
  AdamOptimizer adam(opts.adam, model.NumParams());

  TeacherModel best = model;
  double best_auc = TeacherAuc(model, cv);
  int epochs_without_gain = 0;
  Rng rng(opts.seed ^ 0x7ea7c4e5ull);
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= opts.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (size_t begin = 0; begin < order.size(); begin += opts.batch_size) {
      const size_t end = std::min(order.size(), begin + opts.batch_size);
      SetZero(grads);
      for (size_t k = begin; k < end; ++k) {
        const UtteranceRecord &r = train[order[k]];
        loss_sum += TeacherLoss(model, *r.lattice, r.class_label, &grad);
      }
      ScaleTensors(grads, 1.0 / static_cast<double>(end - begin));
      adam.Step(params, AsConst(grads));
    }
    const double cv_auc = TeacherAuc(model, cv);
    if (log) log->push_back({epoch, loss_sum / train.size(), cv_auc});
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

EmbeddingTable ExportEmbeddings(const TeacherModel &model,
                                std::span<const UtteranceRecord> records) {
  EmbeddingTable table;
  for (const auto &r : records) {
    if (!r.lattice) throw Error(ErrorKind::kMissingLattice, r.id);
    // Rounded to file precision.
    table[r.id] = LatticeEmbed(model, *r.lattice).cast<float>().cast<double>();
  }
  return table;
}

void SaveEmbeddings(const std::filesystem::path &path, const EmbeddingTable &table) {
  std::ofstream os = OpenForWrite(path);
  WriteMagic(os, kEmbeddingMagic);
  WriteU32(os, kEmbeddingVersion);
  WriteU32(os, static_cast<uint32_t>(table.size()));
  for (const auto &[id, vec] : table) {
    if (vec.size() != kLatticeEmbeddingDim)
      throw Error(ErrorKind::kShape, "embedding for " + id + " is not 64-dim");
    WriteString(os, id);
    for (Eigen::Index d = 0; d < vec.size(); ++d) WriteF32(os, static_cast<float>(vec[d]));
  }
  if (!os) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

EmbeddingTable LoadEmbeddings(const std::filesystem::path &path) {
  std::ifstream is = OpenForRead(path);
  ExpectMagic(is, kEmbeddingMagic);
  const uint32_t version = ReadU32(is);
  if (version != kEmbeddingVersion)
    throw Error(ErrorKind::kFormat, "unsupported embedding version " + std::to_string(version));
  const uint32_t count = ReadU32(is);
  EmbeddingTable table;
  for (uint32_t k = 0; k < count; ++k) {
    std::string id = ReadString(is, 4096);
    Vector vec(kLatticeEmbeddingDim);
    for (int d = 0; d < kLatticeEmbeddingDim; ++d) vec[d] = ReadF32(is);
    if (!vec.allFinite()) throw Error(ErrorKind::kFormat, "non-finite embedding for " + id);
    if (!table.emplace(std::move(id), std::move(vec)).second)
      throw Error(ErrorKind::kFormat, "duplicate utterance id");
  }
  if (is.peek() != std::char_traits<char>::eof())
    throw Error(ErrorKind::kFormat, "trailing bytes in " + path.string());
  return table;
}

void SaveTeacher(const std::filesystem::path &path, const TeacherModel &model) {
  SaveTensors(path, model.Tensors());
}

TeacherModel LoadTeacher(const std::filesystem::path &path) {
  const std::vector<StoredTensor> stored = LoadTensors(path);
  const StoredTensor &emb = FindTensor(stored, "teacher.word_embedding");
  if (emb.dims.size() != 2 || emb.dims[0] != kWordEmbeddingDim)
    throw Error(ErrorKind::kFormat, "bad word embedding shape");
  TeacherConfig cfg;
  cfg.vocab_size = emb.dims[1];
  cfg.num_layers = 0;
  while (std::any_of(stored.begin(), stored.end(), [&](const StoredTensor &t) {
    return t.name == "teacher.attention." + std::to_string(cfg.num_layers) + ".wq";
  }))
    ++cfg.num_layers;
  TeacherModel model = TeacherModel::Zeros(cfg);
  AssignTensors(stored, model.Tensors());
  return model;
}

}  // namespace ftm
