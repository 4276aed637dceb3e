// tests/acceptance.cc

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

// Acceptance run. Prints one PASS/FAIL line per criterion and exits nonzero
// if any selected criterion fails.
//
//   acceptance [--criteria 1,2,...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ftm/error.h"
#include "ftm/ftm-metrics.h"
#include "ftm/gradient-check.h"
#include "ftm/kt-training.h"
#include "ftm/lattice-teacher.h"
#include "ftm/streaming-decision.h"
#include "ftm/student-net.h"
#include "ftm/synth-corpus.h"
#include "test-util.h"

namespace ftm {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char *format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char *format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

struct Verdict {
  bool pass = true;
  std::string detail;
  void Fail(const std::string &why) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
  void Note(const std::string &what) { detail += (detail.empty() ? "" : "; ") + what; }
};

// ---------------------------------------------------------------------------
// Experiment profile for the trained-model criteria: default generator and
// class ratio, reduced corpus sizes and student width.

constexpr int kTrendSeeds = 5;
constexpr double kTrendBudget6 = 15 * 60.0;
constexpr double kTrendBudget7 = 30 * 60.0;
constexpr double kNullBudget = 10 * 60.0;

CorpusConfig TrendCorpus(uint64_t seed) {
  CorpusConfig c;
  c.seed = seed;
  c.train = {400, 90};
  return c;
}

StudentConfig TrendStudent() {
  StudentConfig s;
  s.hidden_dim = 32;
  s.num_layers = 2;
  return s;
}

StudentTrainConfig TrendTraining(uint64_t seed, double alpha) {
  StudentTrainConfig cfg;
  cfg.alpha = alpha;
  cfg.options.seed = seed;
  return cfg;
}

TrainingOptions TeacherTraining(uint64_t seed) {
  TrainingOptions o;
  o.seed = seed;
  return o;
}

struct EvalSummary {
  double auc_td1 = 0.0, auc_td2 = 0.0, auc_utt = 0.0;
  double mdt_at_99 = 0.0;
  bool tradeoff_monotone = true;
};

EvalSummary Evaluate(const StudentModel &model, const std::vector<UtteranceRecord> &eval) {
  const std::vector<MitigationSignal> signals = ComputeSignals(model, eval);
  std::vector<MitigationSignal> pos, neg;
  for (size_t i = 0; i < eval.size(); ++i)
    (eval[i].class_label == kTrueTrigger ? pos : neg).push_back(signals[i]);
  auto auc = [&](std::optional<double> td) {
    return RocFromScores(ScoresAtDelay(pos, td), ScoresAtDelay(neg, td)).auc;
  };
  EvalSummary s;
  s.auc_td1 = auc(1.0);
  s.auc_td2 = auc(2.0);
  s.auc_utt = auc(std::nullopt);
  const MdtTradeoff tradeoff = AvgMdtSweep(neg, pos, CriticalTaus(pos));
  s.mdt_at_99 = AvgMdtAtTpr(tradeoff, 0.99);
  for (size_t k = 1; k < tradeoff.size(); ++k)
    if (tradeoff[k].tpr > tradeoff[k - 1].tpr ||
        tradeoff[k].avg_mdt_s > tradeoff[k - 1].avg_mdt_s)
      s.tradeoff_monotone = false;
  return s;
}

struct SeedRun {
  uint64_t seed = 0;
  EvalSummary baseline, student;
  double baseline_seconds = 0.0;  // corpus, baseline training and evaluation
  double kt_seconds = 0.0;        // teacher, embeddings, student and evaluation
  double teacher_auc = 0.0;
};

SeedRun RunSeed(uint64_t seed) {
  SeedRun run;
  run.seed = seed;
  Clock::time_point t0 = Clock::now();
  const Corpus corpus = GenerateCorpus(TrendCorpus(seed));
  const StudentModel baseline =
      TrainStudent(corpus.train, corpus.cv, nullptr, TrendStudent(), TrendTraining(seed, 0.0));
  run.baseline = Evaluate(baseline, corpus.eval);
  run.baseline_seconds = Seconds(t0);

  t0 = Clock::now();
  const TeacherModel teacher =
      TrainTeacher(corpus.train, corpus.cv, TeacherConfig{}, TeacherTraining(seed));
  run.teacher_auc = TeacherAuc(teacher, corpus.eval);
  const EmbeddingTable targets = ExportEmbeddings(teacher, corpus.train);
  const StudentModel student =
      TrainStudent(corpus.train, corpus.cv, &targets, TrendStudent(), TrendTraining(seed, 0.1));
  run.student = Evaluate(student, corpus.eval);
  run.kt_seconds = Seconds(t0);
  return run;
}

std::vector<SeedRun> &TrendRuns() {
  static std::vector<SeedRun> runs;
  if (runs.empty()) {
    for (int s = 1; s <= kTrendSeeds; ++s) {
      runs.push_back(RunSeed(s));
      const SeedRun &r = runs.back();
      std::printf(
          "  seed %d: teacher auc %.4f | baseline auc td1 %.4f td2 %.4f utt %.4f mdt %.3f s "
          "| student auc td1 %.4f td2 %.4f utt %.4f mdt %.3f s | %.0f s + %.0f s\n",
          s, r.teacher_auc, r.baseline.auc_td1, r.baseline.auc_td2, r.baseline.auc_utt,
          r.baseline.mdt_at_99, r.student.auc_td1, r.student.auc_td2, r.student.auc_utt,
          r.student.mdt_at_99, r.baseline_seconds, r.kt_seconds);
      std::fflush(stdout);
    }
  }
  return runs;
}

// ---------------------------------------------------------------------------

FeatureSequence RandomFeatures(int frames, Rng *rng) {
  std::normal_distribution<float> dist(0.0f, 1.0f);
  FeatureSequence f;
  f.frames.resize(frames, kNumMelBins);
  for (int t = 0; t < frames; ++t)
    for (int d = 0; d < kNumMelBins; ++d) f.frames(t, d) = dist(*rng);
  return f;
}

MitigationSignal RandomSignal(Rng *rng, int max_frames = 400) {
  std::uniform_int_distribution<int> len(kUnlabeledPrefixFrames + 1, max_frames);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MitigationSignal s;
  s.scores.resize(len(*rng));
  for (double &x : s.scores) {
    do x = u(*rng);
    while (x <= 0.0);
  }
  return s;
}

// Central differences on a random subset of coordinates of every tensor.
double SampledCoordinateCheck(const TensorList &params, const ConstTensorList &grads,
                              const std::function<double()> &loss, int per_tensor,
                              uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  const double h = 1e-5;
  for (size_t k = 0; k < params.size(); ++k) {
    std::uniform_int_distribution<int64_t> pick(0, params[k].size() - 1);
    for (int n = 0; n < per_tensor; ++n) {
      const int64_t i = pick(rng);
      double &x = params[k].data[i];
      const double saved = x;
      x = saved + h;
      const double up = loss();
      x = saved - h;
      const double down = loss();
      x = saved;
      worst = std::max(worst, RelativeError(grads[k].data[i], (up - down) / (2 * h)));
    }
  }
  return worst;
}

// 1. Parameter budget.
Verdict Criterion1() {
  Verdict v;
  const StudentModel model = StudentModel::Create(StudentConfig{}, 1);
  const int64_t n = CountParameters(model);
  v.Note(Fmt("%lld parameters, formula %lld", static_cast<long long>(n),
             static_cast<long long>(StudentParamCount(StudentConfig{}))));
  if (n != 489601) v.Fail("expected 489601");
  if (StudentParamCount(StudentConfig{}) != n) v.Fail("formula disagrees with model");
  return v;
}

// 2. Gradient correctness on two-utterance batches.
Verdict Criterion2() {
  Verdict v;
  CorpusConfig cc;
  cc.seed = 21;
  cc.min_duration_s = 1.0;
  cc.max_duration_s = 1.3;
  std::vector<UtteranceRecord> utts{GenerateUtterance(cc, "a", kTrueTrigger),
                                    GenerateUtterance(cc, "b", kFalseTrigger)};

  StudentModel student = StudentModel::Create(StudentConfig{}, 22);
  Rng rng(23);
  std::vector<Vector> targets{testing::RandomVector(64, &rng), testing::RandomVector(64, &rng)};
  std::vector<TrainExample> batch;
  for (int i = 0; i < 2; ++i)
    batch.push_back({&utts[i].features, utts[i].class_label, &targets[i]});
  StudentModel sgrad = StudentModel::Zeros(StudentConfig{});
  SetZero(sgrad.Tensors());
  BatchLoss(student, batch, 0.1, &sgrad);
  auto sloss = [&] { return BatchLoss(student, batch, 0.1); };
  const double s_dir =
      MaxError(DirectionalGradientCheck(student.Tensors(), AsConst(sgrad.Tensors()), sloss, 3, 24));
  const double s_coord =
      SampledCoordinateCheck(student.Tensors(), AsConst(sgrad.Tensors()), sloss, 12, 25);

  TeacherModel teacher = TeacherModel::Create(TeacherConfig{}, 26);
  TeacherModel tgrad = TeacherModel::Zeros(TeacherConfig{});
  SetZero(tgrad.Tensors());
  auto tloss = [&](TeacherModel *g) {
    double sum = 0.0;
    for (const auto &u : utts) sum += TeacherLoss(teacher, *u.lattice, u.class_label, g);
    return sum / utts.size();
  };
  tloss(&tgrad);
  ScaleTensors(tgrad.Tensors(), 1.0 / utts.size());
  auto tloss_value = [&] { return tloss(nullptr); };
  const double t_dir = MaxError(
      DirectionalGradientCheck(teacher.Tensors(), AsConst(tgrad.Tensors()), tloss_value, 3, 27));
  const double t_coord =
      SampledCoordinateCheck(teacher.Tensors(), AsConst(tgrad.Tensors()), tloss_value, 12, 28);

  v.Note(Fmt("student max rel err %.2e (directional) %.2e (coordinates); teacher %.2e / %.2e",
             s_dir, s_coord, t_dir, t_coord));
  if (std::max({s_dir, s_coord, t_dir, t_coord}) >= 1e-4) v.Fail("error >= 1e-4");
  return v;
}

// 3. Loss algebra.
Verdict Criterion3() {
  Verdict v;
  Rng rng(31);
  const int frames = 120;
  MitigationSignal half;
  half.scores.assign(frames, 0.5);
  const Matrix emb = testing::RandomMatrix(frames, 64, &rng);
  const Vector target = testing::RandomVector(64, &rng);
  double worst_ln2 = 0.0;
  for (int label : {kFalseTrigger, kTrueTrigger}) {
    const LossBreakdown l = CombinedLoss(half, emb, {label, 50}, nullptr, 0.0);
    worst_ln2 = std::max(worst_ln2, std::abs(l.total - std::log(2.0)));
  }
  if (worst_ln2 > 1e-12) v.Fail(Fmt("ln 2 deviation %.2e", worst_ln2));

  int alpha_zero_mismatch = 0, prefix_mismatch = 0;
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int trial = 0; trial < 200; ++trial) {
    MitigationSignal s;
    s.scores.resize(60 + trial);
    for (double &x : s.scores) x = u(rng);
    const Matrix e = testing::RandomMatrix(s.NumFrames(), 64, &rng);
    const int label = trial % 2;
    const LossBreakdown with_target = CombinedLoss(s, e, {label, 50}, &target, 0.0);
    const LossBreakdown without = CombinedLoss(s, e, {label, 50}, nullptr, 0.0);
    if (with_target.total != without.total || without.total != without.bce)
      ++alpha_zero_mismatch;

    MitigationSignal s2 = s;
    Matrix e2 = e;
    for (int t = 0; t < 50; ++t) {
      s2.scores[t] = u(rng);
      e2.row(t) = testing::RandomVector(64, &rng).transpose();
    }
    const LossBreakdown a = CombinedLoss(s, e, {label, 50}, &target, 0.1);
    const LossBreakdown b = CombinedLoss(s2, e2, {label, 50}, &target, 0.1);
    if (a.total != b.total || a.bce != b.bce || a.mse != b.mse) ++prefix_mismatch;
  }

  // The same two laws through the batched training path.
  StudentConfig small{kNumMelBins, 8, 2, 64};
  StudentModel model = StudentModel::Create(small, 32);
  FeatureSequence f1 = RandomFeatures(80, &rng), f2 = RandomFeatures(95, &rng);
  std::vector<TrainExample> with{{&f1, 1, &target}, {&f2, 0, &target}};
  std::vector<TrainExample> without{{&f1, 1, nullptr}, {&f2, 0, nullptr}};
  StudentModel g1 = StudentModel::Zeros(small), g2 = StudentModel::Zeros(small);
  SetZero(g1.Tensors());
  SetZero(g2.Tensors());
  const double l1 = BatchLoss(model, with, 0.0, &g1);
  const double l2 = BatchLoss(model, without, 0.0, &g2);
  bool grads_equal = l1 == l2;
  const ConstTensorList a = AsConst(g1.Tensors()), b = AsConst(g2.Tensors());
  for (size_t k = 0; k < a.size(); ++k)
    grads_equal = grads_equal && std::equal(a[k].data, a[k].data + a[k].size(), b[k].data);

  v.Note(Fmt("ln 2 deviation %.1e; alpha=0 mismatches %d/200; prefix mismatches %d/200; "
             "batched alpha=0 path %s",
             worst_ln2, alpha_zero_mismatch, prefix_mismatch,
             grads_equal ? "bit-identical" : "differs"));
  if (alpha_zero_mismatch) v.Fail("alpha=0 path differs from BCE-only path");
  if (prefix_mismatch) v.Fail("prefix perturbation changed a loss term");
  if (!grads_equal) v.Fail("batched alpha=0 path differs");
  return v;
}

// 4. Decision boundary laws.
Verdict Criterion4() {
  Verdict v;
  Rng rng(41);
  int bad_zero = 0, bad_one = 0;
  for (int i = 0; i < 1000; ++i) {
    const MitigationSignal s = RandomSignal(&rng);
    const DecisionOutcome a = DecideVariable(s, {0.0, std::nullopt});
    if (a.decision != Decision::kAccept || a.mdt_s) ++bad_zero;
    const DecisionOutcome r = DecideVariable(s, {1.0, std::nullopt});
    if (r.decision != Decision::kReject || !r.mdt_s || *r.mdt_s != 0.0) ++bad_one;
  }
  int bad_mono = 0;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    MitigationSignal s = RandomSignal(&rng);
    // Smooth signals give many intermediate decisions.
    for (int t = 1; t < s.NumFrames(); ++t) s.scores[t] = 0.97 * s.scores[t - 1] + 0.03 * s.scores[t];
    double t1 = u(rng), t2 = u(rng);
    if (t1 > t2) std::swap(t1, t2);
    const DecisionOutcome a = DecideVariable(s, {t1, std::nullopt});
    const DecisionOutcome b = DecideVariable(s, {t2, std::nullopt});
    if (a.decision == Decision::kReject &&
        (b.decision != Decision::kReject || *b.mdt_s > *a.mdt_s))
      ++bad_mono;
  }
  v.Note(Fmt("tau=0 violations %d/1000; tau=1 violations %d/1000; monotonicity violations %d/100",
             bad_zero, bad_one, bad_mono));
  if (bad_zero || bad_one || bad_mono) v.Fail("boundary law violated");
  return v;
}

bool TradeoffMonotone(const MdtTradeoff &t) {
  for (size_t k = 1; k < t.size(); ++k)
    if (t[k].tau < t[k - 1].tau || t[k].tpr > t[k - 1].tpr || t[k].avg_mdt_s > t[k - 1].avg_mdt_s)
      return false;
  return true;
}

// 5. Metric oracle equivalence.
Verdict Criterion5() {
  Verdict v;
  Rng rng(51);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> total(2, 50);
    const int n = total(rng);
    std::uniform_int_distribution<int> split(1, n - 1);
    const int n_pos = split(rng);
    // Coarse grids make ties common.
    std::uniform_int_distribution<int> level(0, trial % 3 == 0 ? 5 : 1000);
    std::vector<double> pos(n_pos), neg(n - n_pos);
    for (double &x : pos) x = level(rng) / 1000.0;
    for (double &x : neg) x = level(rng) / 1000.0;
    double pairs = 0.0;
    for (double p : pos)
      for (double q : neg) pairs += p > q ? 1.0 : (p == q ? 0.5 : 0.0);
    pairs /= static_cast<double>(pos.size() * neg.size());
    worst = std::max(worst, std::abs(RocFromScores(pos, neg).auc - pairs));
  }
  if (worst > 1e-12) v.Fail(Fmt("AUC deviation %.2e", worst));

  int non_monotone = 0, evaluations = 0;
  for (int trial = 0; trial < 30; ++trial, ++evaluations) {
    std::vector<MitigationSignal> pos(20), neg(25);
    for (auto &s : pos) s = RandomSignal(&rng, 200);
    for (auto &s : neg) s = RandomSignal(&rng, 200);
    std::vector<double> taus = CriticalTaus(pos);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 20; ++k) taus.push_back(u(rng));
    if (!TradeoffMonotone(AvgMdtSweep(neg, pos, taus))) ++non_monotone;
  }
  {
    CorpusConfig cc;
    cc.seed = 52;
    cc.train = {2, 2};
    cc.cv = {2, 2};
    cc.eval = {40, 40};
    const Corpus corpus = GenerateCorpus(cc);
    const StudentModel model = StudentModel::Create(StudentConfig{kNumMelBins, 16, 2, 64}, 53);
    const std::vector<MitigationSignal> sig = ComputeSignals(model, corpus.eval);
    std::vector<MitigationSignal> pos, neg;
    for (size_t i = 0; i < sig.size(); ++i)
      (corpus.eval[i].class_label == kTrueTrigger ? pos : neg).push_back(sig[i]);
    ++evaluations;
    if (!TradeoffMonotone(AvgMdtSweep(neg, pos, CriticalTaus(pos)))) ++non_monotone;
  }
  v.Note(Fmt("max |trapezoid - pair count| %.1e over 100 sets; non-monotone trade-offs %d/%d",
             worst, non_monotone, evaluations));
  if (non_monotone) v.Fail("trade-off not monotone");
  return v;
}

// 6. Baseline AUC does not decrease with the decision delay.
Verdict Criterion6() {
  Verdict v;
  int ok = 0;
  double seconds = 0.0;
  for (const SeedRun &r : TrendRuns()) {
    ok += r.baseline.auc_td1 <= r.baseline.auc_td2 && r.baseline.auc_td2 <= r.baseline.auc_utt;
    seconds += r.baseline_seconds;
  }
  v.Note(Fmt("non-decreasing for %d/%d seeds; %.0f s", ok, kTrendSeeds, seconds));
  if (ok < 4) v.Fail("fewer than 4 seeds");
  if (seconds > kTrendBudget6) v.Fail("over runtime budget");
  return v;
}

// 7. Knowledge transfer helps.
Verdict Criterion7() {
  Verdict v;
  int ok = 0;
  double seconds = 0.0, mdt_base = 0.0, mdt_student = 0.0;
  bool monotone = true;
  for (const SeedRun &r : TrendRuns()) {
    ok += r.student.auc_utt >= r.baseline.auc_utt;
    seconds += r.baseline_seconds + r.kt_seconds;
    mdt_base += r.baseline.mdt_at_99 / kTrendSeeds;
    mdt_student += r.student.mdt_at_99 / kTrendSeeds;
    monotone = monotone && r.baseline.tradeoff_monotone && r.student.tradeoff_monotone;
  }
  v.Note(Fmt("student >= baseline AUC for %d/%d seeds; mean MDT@TPR0.99 student %.3f s vs "
             "baseline %.3f s; %.0f s",
             ok, kTrendSeeds, mdt_student, mdt_base, seconds));
  if (ok < 4) v.Fail("fewer than 4 seeds");
  if (mdt_student > mdt_base) v.Fail("student mean MDT above baseline");
  if (!monotone) v.Fail("trade-off not monotone");
  if (seconds > kTrendBudget7) v.Fail("over runtime budget");
  return v;
}

// Evidence accumulation on the trained baselines.
Verdict EvidenceInvariant() {
  Verdict v;
  int ok = 0;
  for (const SeedRun &r : TrendRuns()) ok += r.baseline.auc_td2 >= r.baseline.auc_td1;
  v.Note(Fmt("AUC at onset+200 >= AUC at onset+100 for %d/%d seeds", ok, kTrendSeeds));
  if (2 * ok <= kTrendSeeds) v.Fail("not a majority");
  return v;
}

// 8. Streaming fidelity.
Verdict Criterion8() {
  Verdict v;
  Rng rng(81);
  const StudentModel model = StudentModel::Create(StudentConfig{}, 82);
  int fold_mismatch = 0, causal_mismatch = 0, truncation_mismatch = 0, rejections = 0;
  for (int trial = 0; trial < 4; ++trial) {
    const FeatureSequence f = RandomFeatures(150 + 40 * trial, &rng);
    const StudentOutput batch = StudentForward(model, f);
    StreamState state = StreamState::Initial(model);
    for (int t = 0; t < f.NumFrames(); ++t) {
      const StepOutput step =
          StudentStep(model, &state, f.frames.row(t).transpose().cast<double>());
      if (step.score != batch.signal.scores[t] ||
          step.embedding != batch.embeddings.row(t).transpose())
        ++fold_mismatch;
    }
    const int cut = 60 + 20 * trial;
    FeatureSequence g = f;
    g.frames.bottomRows(f.NumFrames() - cut) = RandomFeatures(f.NumFrames() - cut, &rng).frames;
    const StudentOutput perturbed = StudentForward(model, g);
    for (int t = 0; t < cut; ++t)
      if (perturbed.signal.scores[t] != batch.signal.scores[t] ||
          perturbed.embeddings.row(t) != batch.embeddings.row(t))
        ++causal_mismatch;
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const MitigationSignal s = RandomSignal(&rng);
    const PolicyConfig cfg{u(rng), std::nullopt};
    const DecisionOutcome full = DecideVariable(s, cfg);
    if (full.decision != Decision::kReject) continue;
    ++rejections;
    MitigationSignal cut = s;
    cut.scores.resize(full.decision_frame + 1);
    const DecisionOutcome part = DecideVariable(cut, cfg);
    if (part.decision != full.decision || part.mdt_s != full.mdt_s ||
        part.decision_frame != full.decision_frame)
      ++truncation_mismatch;
  }
  v.Note(Fmt("step/batch mismatches %d; causality violations %d; truncation mismatches %d/%d",
             fold_mismatch, causal_mismatch, truncation_mismatch, rejections));
  if (fold_mismatch) v.Fail("step-folded forward differs from batch forward");
  if (causal_mismatch) v.Fail("future frames changed past outputs");
  if (truncation_mismatch || rejections == 0) v.Fail("truncation changed the decision");
  return v;
}

// 9. Determinism of the command-line pipeline.
Verdict Criterion9() {
  Verdict v;
  testing::TempDir dir("acceptance");
  const std::string cli = FTM_CLI_PATH;
  const std::string cfg = (dir / "run.cfg").string();
  testing::WriteBytes(cfg,
                      "seed = 5\ntrain-true = 80\ntrain-false = 40\ncv-true = 30\n"
                      "cv-false = 30\neval-true = 60\neval-false = 60\nhidden = 16\n"
                      "layers = 2\nepochs = 3\n");
  auto path = [&](const std::string &name) { return (dir / name).string(); };
  auto run = [&](const std::string &args) {
    const testing::CommandResult r =
        testing::RunCommand(cli + " --config " + cfg + " " + args + " > /dev/null 2>&1");
    if (r.status != 0) v.Fail("command failed: " + args);
  };
  auto bytes = [&](const std::string &name) {
    std::string all;
    std::vector<fs::path> files;
    const fs::path root = dir / name;
    if (fs::is_directory(root)) {
      for (const auto &e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file()) files.push_back(e.path());
    } else {
      files.push_back(root);
    }
    std::sort(files.begin(), files.end());
    for (const auto &f : files)
      all += fs::relative(f, dir / name).string() + "\n" + testing::ReadBytes(f);
    return all;
  };
  int compared = 0, differing = 0;
  auto same = [&](const std::string &a, const std::string &b) {
    ++compared;
    if (bytes(a) != bytes(b)) {
      ++differing;
      v.Fail(a + " and " + b + " differ");
    }
  };
  run("gen-corpus --out " + path("c1"));
  run("gen-corpus --out " + path("c2"));
  same("c1", "c2");
  const std::string first = bytes("c1");
  run("gen-corpus --force --out " + path("c1"));
  ++compared;
  if (bytes("c1") != first) {
    ++differing;
    v.Fail("forced re-run changed the corpus");
  }
  for (const char *tag : {"a", "b"}) {
    const std::string t(tag);
    run("train-teacher --corpus " + path("c1") + " --out " + path(t + "-t.bin"));
    run("embed --teacher " + path(t + "-t.bin") + " --corpus " + path("c1") + " --out " +
        path(t + "-e.bin"));
    run("train-student --deterministic --alpha 0.1 --corpus " + path("c1") + " --embeddings " +
        path(t + "-e.bin") + " --out " + path(t + "-s.bin"));
    run("eval-fixed --model " + path(t + "-s.bin") + " --corpus " + path("c1") + " --out " +
        path(t + "-ef"));
    run("eval-stream --model " + path(t + "-s.bin") + " --corpus " + path("c1") + " --out " +
        path(t + "-es.csv"));
  }
  for (const char *f : {"-t.bin", "-t.bin.log.csv", "-e.bin", "-s.bin", "-s.bin.log.csv",
                        "-ef", "-es.csv"})
    same(std::string("a") + f, std::string("b") + f);
  v.Note(Fmt("%d artifact pairs compared, %d differ", compared, differing));
  return v;
}

// 10. Null corpus: no class information in the acoustics.
Verdict Criterion10() {
  Verdict v;
  const Clock::time_point t0 = Clock::now();
  CorpusConfig cc = TrendCorpus(101);
  cc.delta = 0.0;
  const Corpus corpus = GenerateCorpus(cc);
  const StudentModel model =
      TrainStudent(corpus.train, corpus.cv, nullptr, TrendStudent(), TrendTraining(101, 0.0));
  const EvalSummary s = Evaluate(model, corpus.eval);
  const double seconds = Seconds(t0);
  v.Note(Fmt("baseline AUC at utt-len %.4f; %.0f s", s.auc_utt, seconds));
  if (s.auc_utt < 0.4 || s.auc_utt > 0.6) v.Fail("AUC outside [0.4, 0.6]");
  if (seconds > kNullBudget) v.Fail("over runtime budget");
  return v;
}

struct Entry {
  std::string label;
  std::string title;
  std::function<Verdict()> run;
};

int Main(int argc, char **argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> selected;
  app.add_option("--criteria", selected, "Criteria to run (default: all)")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<int, Entry>> entries{
      {1, {"1", "parameter budget", Criterion1}},
      {2, {"2", "gradient correctness", Criterion2}},
      {3, {"3", "loss algebra", Criterion3}},
      {4, {"4", "decision boundary laws", Criterion4}},
      {5, {"5", "metric oracle equivalence", Criterion5}},
      {6, {"6", "AUC non-decreasing in delay", Criterion6}},
      {7, {"7", "knowledge transfer helps", Criterion7}},
      {8, {"8", "streaming fidelity", Criterion8}},
      {9, {"9", "determinism", Criterion9}},
      {10, {"10", "null corpus", Criterion10}},
      {6, {"inv", "evidence accumulation", EvidenceInvariant}},
  };
  const std::set<int> want(selected.begin(), selected.end());
  bool all_pass = true;
  for (const auto &[id, e] : entries) {
    if (!want.empty() && !want.count(id)) continue;
    const Clock::time_point t0 = Clock::now();
    Verdict v;
    try {
      v = e.run();
    } catch (const std::exception &ex) {
      v.Fail(std::string("exception: ") + ex.what());
    }
    all_pass = all_pass && v.pass;
    const std::string line = Fmt("criterion %-3s %s  %s: %s (%.1f s)", e.label.c_str(),
                                 v.pass ? "PASS" : "FAIL", e.title.c_str(), v.detail.c_str(),
                                 Seconds(t0));
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}

}  // namespace
}  // namespace ftm

int main(int argc, char **argv) { return ftm::Main(argc, argv); }
