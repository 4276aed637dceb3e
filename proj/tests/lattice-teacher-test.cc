// tests/lattice-teacher-test.cc

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

#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "ftm/ftm-metrics.h"
#include "ftm/gradient-check.h"
#include "ftm/lattice-teacher.h"
#include "ftm/lattice.h"
#include "ftm/synth-corpus.h"
#include "test-util.h"

namespace ftm {
namespace {

using testing::CaughtKind;
using testing::TempDir;

LatticeNode Node(int word, double post = 0.5) { return {word, post, -1.0, -2.0, 0.3}; }

Lattice Chain(int n) {
  Lattice lat;
  for (int i = 0; i < n; ++i) lat.nodes.push_back(Node(i));
  for (int i = 0; i + 1 < n; ++i) lat.edges.emplace_back(i, i + 1);
  lat.start = 0;
  lat.end = n - 1;
  return lat;
}

Lattice CompleteDag(const std::vector<LatticeNode> &nodes) {
  Lattice lat;
  lat.nodes = nodes;
  const int n = static_cast<int>(nodes.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) lat.edges.emplace_back(i, j);
  lat.start = 0;
  lat.end = n - 1;
  return lat;
}

CorpusConfig SmallCorpus(uint64_t seed) {
  CorpusConfig cfg;
  cfg.seed = seed;
  cfg.train = {300, 300};
  cfg.cv = {100, 100};
  cfg.eval = {200, 200};
  cfg.max_duration_s = 2.0;
  cfg.true_mean_duration_s = 1.2;
  cfg.false_mean_duration_s = 1.5;
  return cfg;
}

Lattice Permute(const Lattice &lat, const std::vector<int> &perm) {
  // perm[old] = new
  Lattice out;
  out.nodes.resize(lat.nodes.size());
  for (size_t i = 0; i < lat.nodes.size(); ++i) out.nodes[perm[i]] = lat.nodes[i];
  for (const auto &[a, b] : lat.edges) out.edges.emplace_back(perm[a], perm[b]);
  std::reverse(out.edges.begin(), out.edges.end());
  out.start = perm[lat.start];
  out.end = perm[lat.end];
  return out;
}

TEST_CASE("mask construction") {
  Lattice single;
  single.nodes.push_back(Node(1));
  AttentionMask m1 = BuildMask(single);
  CHECK(m1.rows() == 1);
  CHECK(m1(0, 0));

  AttentionMask chain = BuildMask(Chain(3));
  CHECK(chain(0, 0));
  CHECK(chain(1, 1));
  CHECK(chain(2, 2));
  CHECK(chain(0, 1));
  CHECK(chain(1, 0));
  CHECK(chain(1, 2));
  CHECK(chain(2, 1));
  CHECK_FALSE(chain(0, 2));
  CHECK_FALSE(chain(2, 0));

  AttentionMask full = BuildMask(CompleteDag({Node(1), Node(2), Node(3)}));
  CHECK(full.all());
}

TEST_CASE("lattice validation") {
  CHECK_NOTHROW(ValidateLattice(Chain(4)));
  Lattice cycle = Chain(4);
  cycle.edges.emplace_back(2, 1);
  CHECK(CaughtKind([&] { ValidateLattice(cycle); }) == ErrorKind::kInvalidLattice);
  Lattice into_start = Chain(4);
  into_start.edges.emplace_back(2, 0);
  CHECK(CaughtKind([&] { ValidateLattice(into_start); }) == ErrorKind::kInvalidLattice);
  Lattice dangling = Chain(4);
  dangling.nodes.push_back(Node(9));
  dangling.edges.emplace_back(0, 4);
  CHECK(CaughtKind([&] { ValidateLattice(dangling); }) == ErrorKind::kInvalidLattice);
  Lattice bad_post = Chain(3);
  bad_post.nodes[1].posterior = 1.5;
  CHECK(CaughtKind([&] { ValidateLattice(bad_post); }) == ErrorKind::kInvalidLattice);
  Lattice bad_dur = Chain(3);
  bad_dur.nodes[1].duration_s = -0.1;
  CHECK(CaughtKind([&] { ValidateLattice(bad_dur); }) == ErrorKind::kInvalidLattice);
  Lattice out_of_range = Chain(3);
  out_of_range.edges.emplace_back(1, 7);
  CHECK(CaughtKind([&] { ValidateLattice(out_of_range); }) == ErrorKind::kInvalidLattice);
}

TEST_CASE("lattice text files round trip") {
  TempDir dir("lattice");
  UtteranceRecord r = GenerateUtterance(SmallCorpus(3), "x", kFalseTrigger);
  WriteLattice(dir / "x.lat", *r.lattice);
  Lattice back = ReadLattice(dir / "x.lat");
  REQUIRE(back.NumNodes() == r.lattice->NumNodes());
  CHECK(back.edges == r.lattice->edges);
  for (int i = 0; i < back.NumNodes(); ++i) {
    CHECK(back.nodes[i].word_id == r.lattice->nodes[i].word_id);
    CHECK(back.nodes[i].posterior == r.lattice->nodes[i].posterior);
    CHECK(back.nodes[i].am_score == r.lattice->nodes[i].am_score);
    CHECK(back.nodes[i].lm_score == r.lattice->nodes[i].lm_score);
    CHECK(back.nodes[i].duration_s == r.lattice->nodes[i].duration_s);
  }
  testing::WriteBytes(dir / "bad.lat", "1 0.5 -1 -2\n");
  CHECK(CaughtKind([&] { ReadLattice(dir / "bad.lat"); }) == ErrorKind::kFormat);
  testing::WriteBytes(dir / "num.lat", "1 half -1 -2 0.1\n");
  CHECK(CaughtKind([&] { ReadLattice(dir / "num.lat"); }) == ErrorKind::kFormat);
  testing::WriteBytes(dir / "cyc.lat", "1 1 0 0 0\n2 1 0 0 0\n3 1 0 0 0\n0 1\n1 2\n2 1\n");
  CHECK(CaughtKind([&] { ReadLattice(dir / "cyc.lat"); }) == ErrorKind::kInvalidLattice);
}

TEST_CASE("identical nodes under a full mask embed like one node") {
  TeacherModel model = TeacherModel::Create(TeacherConfig{}, 5);
  const LatticeNode node{17, 0.7, -1.3, -2.2, 0.4};
  Lattice one;
  one.nodes.push_back(node);
  const Vector single = LatticeEmbed(model, one);
  for (int n : {2, 3, 6}) {
    const Vector many = LatticeEmbed(model, CompleteDag(std::vector<LatticeNode>(n, node)));
    CHECK((many - single).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("embedding is invariant to node reindexing") {
  TeacherModel model = TeacherModel::Create(TeacherConfig{}, 6);
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    UtteranceRecord r =
        GenerateUtterance(SmallCorpus(8), "u" + std::to_string(trial), trial % 2);
    const Lattice &lat = *r.lattice;
    std::vector<int> perm(lat.NumNodes());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Vector a = LatticeEmbed(model, lat);
    const Vector b = LatticeEmbed(model, Permute(lat, perm));
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("embedding is the mean of node states and scores depend only on it") {
  TeacherModel model = TeacherModel::Create(TeacherConfig{}, 9);
  UtteranceRecord r = GenerateUtterance(SmallCorpus(9), "m", kTrueTrigger);
  const Matrix states = LatticeNodeStates(model, *r.lattice);
  const Vector emb = LatticeEmbed(model, *r.lattice);
  CHECK(states.rows() == 64);
  CHECK(states.cols() == r.lattice->NumNodes());
  CHECK(emb.size() == 64);
  Vector mean = Vector::Zero(64);
  for (Eigen::Index j = 0; j < states.cols(); ++j) mean += states.col(j);
  mean /= static_cast<double>(states.cols());
  CHECK((emb - mean).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(LatticeEmbed(model, *r.lattice) == emb);
  const double s = TeacherScore(model, emb);
  CHECK(s > 0.0);
  CHECK(s < 1.0);
  CHECK(TeacherScore(model, Vector(emb)) == s);
}

TEST_CASE("out of vocabulary words are rejected") {
  TeacherConfig cfg;
  cfg.vocab_size = 10;
  TeacherModel model = TeacherModel::Create(cfg, 1);
  Lattice lat = Chain(3);
  lat.nodes[1].word_id = 10;
  CHECK(CaughtKind([&] { LatticeEmbed(model, lat); }) == ErrorKind::kVocab);
}

TEST_CASE("teacher gradient matches finite differences") {
  TeacherConfig cfg;
  cfg.vocab_size = 40;
  TeacherModel model = TeacherModel::Create(cfg, 10);
  CorpusConfig cc = SmallCorpus(10);
  cc.vocab_size = 40;
  for (int label : {kTrueTrigger, kFalseTrigger}) {
    UtteranceRecord r = GenerateUtterance(cc, "g" + std::to_string(label), label);
    TeacherModel grad = TeacherModel::Zeros(cfg);
    SetZero(grad.Tensors());
    TeacherLoss(model, *r.lattice, label, &grad);
    auto loss = [&] { return TeacherLoss(model, *r.lattice, label); };
    auto results = DirectionalGradientCheck(model.Tensors(), AsConst(grad.Tensors()), loss, 3,
                                            11 + label);
    for (const auto &t : results) {
      INFO(t.name);
      CHECK(t.max_relative_error < 1e-4);
    }
  }
}

TEST_CASE("teacher classifier head matches coordinate-wise differences") {
  TeacherConfig cfg;
  cfg.vocab_size = 30;
  TeacherModel model = TeacherModel::Create(cfg, 12);
  CorpusConfig cc = SmallCorpus(12);
  cc.vocab_size = 30;
  UtteranceRecord r = GenerateUtterance(cc, "c", kTrueTrigger);
  TeacherModel grad = TeacherModel::Zeros(cfg);
  SetZero(grad.Tensors());
  TeacherLoss(model, *r.lattice, kTrueTrigger, &grad);
  Matrix &w = model.classifier.weight;
  std::vector<double> theta(w.data(), w.data() + w.size());
  std::vector<double> g(grad.classifier.weight.data(),
                        grad.classifier.weight.data() + grad.classifier.weight.size());
  auto f = [&](std::span<const double> th) {
    TeacherModel probe = model;
    std::copy(th.begin(), th.end(), probe.classifier.weight.data());
    return TeacherLoss(probe, *r.lattice, kTrueTrigger);
  };
  CHECK(FiniteDiffCheck(f, theta, g) < 1e-4);
}

TEST_CASE("teacher training") {
  Corpus corpus = GenerateCorpus(SmallCorpus(13));
  TrainingOptions opts;
  opts.seed = 13;
  std::vector<EpochLogEntry> log;
  TeacherModel model = TrainTeacher(corpus.train, corpus.cv, TeacherConfig{}, opts, &log);
  CHECK(!log.empty());
  CHECK(log.size() <= 30u);
  const double auc = TeacherAuc(model, corpus.eval);
  MESSAGE("teacher eval AUC " << auc);
  CHECK(auc > 0.9);

  SUBCASE("deterministic") {
    TeacherModel again = TrainTeacher(corpus.train, corpus.cv, TeacherConfig{}, opts);
    CHECK(again.word_embedding == model.word_embedding);
    CHECK(again.classifier.weight == model.classifier.weight);
  }
  SUBCASE("export, save and reload") {
    TempDir dir("teacher");
    EmbeddingTable table = ExportEmbeddings(model, corpus.eval);
    CHECK(table.size() == corpus.eval.size());
    CHECK(ExportEmbeddings(model, corpus.eval) == table);
    SaveEmbeddings(dir / "e.ftme", table);
    EmbeddingTable back = LoadEmbeddings(dir / "e.ftme");
    CHECK(back == table);

    SaveTeacher(dir / "t.ftmw", model);
    TeacherModel loaded = LoadTeacher(dir / "t.ftmw");
    CHECK(loaded.layers.size() == 2u);
    CHECK(loaded.VocabSize() == 500);
    CHECK(loaded.word_embedding == model.word_embedding.cast<float>().cast<double>());
  }
}

TEST_CASE("zero epochs returns the initialization") {
  Corpus corpus = GenerateCorpus(SmallCorpus(14));
  TrainingOptions opts;
  opts.max_epochs = 0;
  opts.seed = 21;
  TeacherModel model = TrainTeacher(corpus.train, corpus.cv, TeacherConfig{}, opts);
  TeacherModel init = TeacherModel::Create(TeacherConfig{}, 21);
  const auto a = model.Tensors();
  const auto b = init.Tensors();
  REQUIRE(a.size() == b.size());
  for (size_t t = 0; t < a.size(); ++t)
    CHECK(std::equal(a[t].data, a[t].data + a[t].size(), b[t].data));
}

TEST_CASE("untrained teachers are uninformative on average") {
  Corpus corpus = GenerateCorpus(SmallCorpus(15));
  double total = 0.0;
  const int num_inits = 20;
  for (int seed = 0; seed < num_inits; ++seed)
    total += TeacherAuc(TeacherModel::Create(TeacherConfig{}, 1000 + seed), corpus.cv);
  const double mean = total / num_inits;
  MESSAGE("mean untrained CV AUC " << mean);
  CHECK(std::abs(mean - 0.5) <= 0.1);
}

TEST_CASE("teacher error cases") {
  Corpus corpus = GenerateCorpus(SmallCorpus(16));
  std::vector<UtteranceRecord> one_class;
  for (const auto &r : corpus.train)
    if (r.class_label == kTrueTrigger) one_class.push_back(r);
  CHECK(CaughtKind([&] {
          TrainTeacher(one_class, corpus.cv, TeacherConfig{}, TrainingOptions{});
        }) == ErrorKind::kDegenerateCorpus);
  std::vector<UtteranceRecord> missing(corpus.eval.begin(), corpus.eval.begin() + 3);
  missing[1].lattice.reset();
  TeacherModel model = TeacherModel::Create(TeacherConfig{}, 1);
  CHECK(CaughtKind([&] { ExportEmbeddings(model, missing); }) == ErrorKind::kMissingLattice);
  TempDir dir("teacher-bad");
  testing::WriteBytes(dir / "bad.ftme", "FTME");
  CHECK(CaughtKind([&] { LoadEmbeddings(dir / "bad.ftme"); }) == ErrorKind::kFormat);
}

}  // namespace
}  // namespace ftm
