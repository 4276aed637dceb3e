// tools/ftm-cli.cc

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

// Command-line front end: corpus generation, teacher and student training,
// embedding export, evaluation and single-utterance streaming inspection.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ftm/error.h"
#include "ftm/feature-fbank.h"
#include "ftm/ftm-metrics.h"
#include "ftm/kt-training.h"
#include "ftm/lattice-teacher.h"
#include "ftm/streaming-decision.h"
#include "ftm/student-net.h"
#include "ftm/synth-corpus.h"

namespace fs = std::filesystem;

namespace ftm {
namespace {

constexpr char kUttLenToken[] = "utt-len";
constexpr char kDefaultDelays[] = "1.0,1.5,2.0,2.5,utt-len";
constexpr double kReportTpr = 0.99;

std::string Fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

std::string Trim(const std::string &s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitList(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double ParseNumber(const std::string &token, const std::string &what) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != token.size() || !std::isfinite(v))
    throw Error(ErrorKind::kConfig, what + ": not a number: '" + token + "'");
  return v;
}

void Require(bool ok, const std::string &what) {
  if (!ok) throw Error(ErrorKind::kConfig, what);
}

int DefaultThreads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

// Plain key=value configuration. Keys are option long names; a key of the
// form "sub.key" applies only to subcommand "sub".
std::vector<std::pair<std::string, std::string>> ReadConfigFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::kMissingFile, "config file " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos || Trim(line.substr(0, eq)).empty())
      throw Error(ErrorKind::kConfig,
                  path + ":" + std::to_string(line_no) + ": expected key=value");
    entries.emplace_back(Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  return entries;
}

std::optional<std::string> FindConfigArg(int argc, char **argv) {
  std::optional<std::string> path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--") break;
    if (arg == "--config" && i + 1 < argc) {
      path = argv[++i];
    } else if (arg.rfind("--config=", 0) == 0) {
      path = arg.substr(9);
    }
  }
  return path;
}

// Installs `value` as the default of option `name` on `sub`. A flag given on
// the command line still takes precedence.
bool SetDefault(CLI::App *sub, const std::string &name, const std::string &value) {
  CLI::Option *opt = sub->get_option_no_throw("--" + name);
  if (!opt || name == "config") return false;
  opt->default_val(value);
  return true;
}

void ApplyConfig(const std::vector<CLI::App *> &subs,
                 const std::vector<std::pair<std::string, std::string>> &entries) {
  for (const auto &[key, value] : entries) {
    bool used = false;
    const size_t dot = key.find('.');
    for (CLI::App *sub : subs) {
      if (dot != std::string::npos) {
        if (key.substr(0, dot) == sub->get_name())
          used = SetDefault(sub, key.substr(dot + 1), value) || used;
      } else {
        used = SetDefault(sub, key, value) || used;
      }
    }
    if (!used) throw Error(ErrorKind::kConfig, "unknown config key '" + key + "'");
  }
}

void ApplySeedEnv(const std::vector<CLI::App *> &subs) {
  const char *env = std::getenv("FTM_SEED");
  if (!env) return;
  const std::string value = Trim(env);
  Require(!value.empty() && value.find_first_not_of("0123456789") == std::string::npos,
          "FTM_SEED must be a non-negative integer, got '" + value + "'");
  for (CLI::App *sub : subs) SetDefault(sub, "seed", value);
}

std::vector<UtteranceRecord> SelectSplit(const Corpus &corpus, const std::string &split) {
  if (split == "train") return corpus.train;
  if (split == "cv") return corpus.cv;
  if (split == "eval") return corpus.eval;
  if (split == "all") {
    std::vector<UtteranceRecord> all = corpus.train;
    all.insert(all.end(), corpus.cv.begin(), corpus.cv.end());
    all.insert(all.end(), corpus.eval.begin(), corpus.eval.end());
    return all;
  }
  throw Error(ErrorKind::kConfig, "unknown split '" + split + "'");
}

Corpus LoadCorpusChecked(const std::string &root) {
  if (!fs::is_directory(root)) throw Error(ErrorKind::kMissingFile, "corpus directory " + root);
  return LoadCorpus(root);
}

void RequireFile(const std::string &path, const std::string &what) {
  if (!fs::is_regular_file(path)) throw Error(ErrorKind::kMissingFile, what + " " + path);
}

void EnsureParent(const fs::path &path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

void SplitByClass(const std::vector<MitigationSignal> &signals,
                  const std::vector<UtteranceRecord> &records,
                  std::vector<MitigationSignal> *pos, std::vector<MitigationSignal> *neg) {
  for (size_t i = 0; i < records.size(); ++i)
    (records[i].class_label == kTrueTrigger ? pos : neg)->push_back(signals[i]);
  if (pos->empty() || neg->empty())
    throw Error(ErrorKind::kDegenerateEvaluation, "evaluation split needs both classes");
}

// ---------------------------------------------------------------------------

struct GenCorpusArgs {
  std::string out;
  bool force = false;
  CorpusConfig cfg;
};

int RunGenCorpus(const GenCorpusArgs &a) {
  a.cfg.Validate();
  const fs::path root = a.out;
  if (fs::exists(root)) {
    Require(fs::is_directory(root), "output path is not a directory: " + a.out);
    if (!fs::is_empty(root)) {
      if (!a.force)
        throw Error(ErrorKind::kIo,
                    "refusing to overwrite non-empty directory " + a.out + " (use --force)");
      fs::remove_all(root / "features");
      fs::remove_all(root / "lattices");
      for (const char *split : {"train", "cv", "eval"})
        fs::remove(root / (std::string(split) + ".manifest"));
    }
  }
  const Corpus corpus = GenerateCorpus(a.cfg);
  WriteCorpus(corpus, root);
  auto report = [](const char *name, const std::vector<UtteranceRecord> &records) {
    int pos = 0;
    for (const auto &r : records) pos += r.class_label == kTrueTrigger;
    std::cout << name << ": " << records.size() << " utterances (" << pos << " true, "
              << records.size() - pos << " false)\n";
  };
  report("train", corpus.train);
  report("cv", corpus.cv);
  report("eval", corpus.eval);
  return 0;
}

struct TrainingArgs {
  uint64_t seed = 1;
  int epochs = 30;
  int batch_size = 32;
  double lr = 1e-3;
  double clip = 5.0;
  int patience = 5;

  TrainingOptions ToOptions() const {
    Require(epochs >= 0, "epochs must be >= 0");
    Require(batch_size >= 1, "batch-size must be >= 1");
    Require(lr > 0.0, "lr must be > 0");
    Require(patience >= 1, "patience must be >= 1");
    TrainingOptions o;
    o.seed = seed;
    o.max_epochs = epochs;
    o.batch_size = batch_size;
    o.adam.learning_rate = lr;
    o.adam.clip_norm = clip;
    o.early_stop_patience = patience;
    return o;
  }
};

void AddTrainingOptions(CLI::App *sub, TrainingArgs *t) {
  sub->add_option("--seed", t->seed, "Initialization and shuffling seed");
  sub->add_option("--epochs", t->epochs, "Maximum number of epochs");
  sub->add_option("--batch-size", t->batch_size, "Utterances per minibatch");
  sub->add_option("--lr", t->lr, "Adam learning rate");
  sub->add_option("--clip", t->clip, "Global gradient-norm clip (<= 0 disables)");
  sub->add_option("--patience", t->patience, "Early-stop patience in epochs");
}

struct TrainTeacherArgs {
  std::string corpus, out, log;
  TrainingArgs train;
  TeacherConfig model;
};

int RunTrainTeacher(const TrainTeacherArgs &a) {
  const TrainingOptions opts = a.train.ToOptions();
  Require(a.model.vocab_size >= 1, "vocab-size must be >= 1");
  Require(a.model.num_layers >= 1, "layers must be >= 1");
  const Corpus corpus = LoadCorpusChecked(a.corpus);
  std::vector<EpochLogEntry> log;
  const TeacherModel model = TrainTeacher(corpus.train, corpus.cv, a.model, opts, &log);
  EnsureParent(a.out);
  SaveTeacher(a.out, model);
  const std::string log_path = a.log.empty() ? a.out + ".log.csv" : a.log;
  EnsureParent(log_path);
  WriteEpochLogCsv(log_path, log);
  std::cout << "epochs: " << log.size() << "\n"
            << "cv_auc: " << Fixed(TeacherAuc(model, corpus.cv)) << "\n";
  return 0;
}

struct EmbedArgs {
  std::string teacher, corpus, out, split = "all";
};

int RunEmbed(const EmbedArgs &a) {
  RequireFile(a.teacher, "teacher model");
  const TeacherModel model = LoadTeacher(a.teacher);
  const Corpus corpus = LoadCorpusChecked(a.corpus);
  const std::vector<UtteranceRecord> records = SelectSplit(corpus, a.split);
  const EmbeddingTable table = ExportEmbeddings(model, records);
  EnsureParent(a.out);
  SaveEmbeddings(a.out, table);
  std::cout << "embeddings: " << table.size() << "\n";
  return 0;
}

struct TrainStudentArgs {
  std::string corpus, embeddings, out, log;
  double alpha = 0.1;
  bool deterministic = false;
  int threads = DefaultThreads();
  TrainingArgs train;
  StudentConfig model;
};

int RunTrainStudent(const TrainStudentArgs &a) {
  StudentTrainConfig cfg;
  cfg.options = a.train.ToOptions();
  Require(a.alpha >= 0.0, "alpha must be >= 0");
  Require(a.threads >= 1, "threads must be >= 1");
  Require(a.model.hidden_dim >= 1 && a.model.num_layers >= 1 && a.model.embedding_dim >= 1,
          "model dimensions must be >= 1");
  cfg.alpha = a.alpha;
  cfg.eval_threads = a.deterministic ? 1 : a.threads;
  std::optional<EmbeddingTable> targets;
  if (!a.embeddings.empty()) {
    RequireFile(a.embeddings, "embedding file");
    targets = LoadEmbeddings(a.embeddings);
  }
  const Corpus corpus = LoadCorpusChecked(a.corpus);
  std::vector<EpochLogEntry> log;
  const StudentModel model = TrainStudent(corpus.train, corpus.cv, targets ? &*targets : nullptr,
                                          a.model, cfg, &log);
  EnsureParent(a.out);
  SaveStudent(a.out, model);
  const std::string log_path = a.log.empty() ? a.out + ".log.csv" : a.log;
  EnsureParent(log_path);
  WriteEpochLogCsv(log_path, log);
  std::cout << "epochs: " << log.size() << "\n"
            << "parameters: " << CountParameters(model) << "\n"
            << "cv_auc: " << Fixed(LastFrameAuc(model, corpus.cv, cfg.eval_threads)) << "\n";
  return 0;
}

struct EvalArgs {
  std::string model, corpus, out, split = "eval";
  std::string delays = kDefaultDelays;
  std::string taus = "critical";
  int threads = DefaultThreads();
};

struct EvalInputs {
  std::vector<MitigationSignal> pos, neg;
};

EvalInputs LoadEvalInputs(const EvalArgs &a) {
  Require(a.threads >= 1, "threads must be >= 1");
  RequireFile(a.model, "student model");
  const StudentModel model = LoadStudent(a.model);
  const Corpus corpus = LoadCorpusChecked(a.corpus);
  const std::vector<UtteranceRecord> records = SelectSplit(corpus, a.split);
  const std::vector<MitigationSignal> signals = ComputeSignals(model, records, a.threads);
  EvalInputs in;
  SplitByClass(signals, records, &in.pos, &in.neg);
  return in;
}

int RunEvalFixed(const EvalArgs &a) {
  std::vector<std::pair<std::string, std::optional<double>>> delays;
  for (const std::string &token : SplitList(a.delays)) {
    if (token == kUttLenToken) {
      delays.emplace_back(token, std::nullopt);
    } else {
      const double td = ParseNumber(token, "td");
      Require(td >= 0.0, "td must be >= 0");
      delays.emplace_back(token, td);
    }
  }
  Require(!delays.empty(), "td list is empty");
  const EvalInputs in = LoadEvalInputs(a);
  const fs::path dir = a.out;
  fs::create_directories(dir);
  std::ofstream summary(dir / "summary.csv");
  if (!summary) throw Error(ErrorKind::kIo, (dir / "summary.csv").string());
  summary << "td,auc,far_at_0.99\n";
  for (const auto &[token, td] : delays) {
    const std::vector<double> pos = ScoresAtDelay(in.pos, td);
    const std::vector<double> neg = ScoresAtDelay(in.neg, td);
    const RocCurve roc = RocFromScores(pos, neg);
    const std::string label = td ? Fixed(*td) : std::string(kUttLenToken);
    WriteRocCsv(dir / ("roc_td_" + label + ".csv"), roc);
    const std::string row = label + "," + Fixed(roc.auc) + "," + Fixed(FarAtTpr(roc, kReportTpr));
    summary << row << "\n";
    std::cout << row << "\n";
  }
  if (!summary) throw Error(ErrorKind::kIo, "write failed: summary.csv");
  return 0;
}

int RunEvalStream(const EvalArgs &a) {
  std::vector<double> taus;
  const bool critical = a.taus == "critical";
  if (!critical) {
    for (const std::string &token : SplitList(a.taus)) {
      const double tau = ParseNumber(token, "tau");
      Require(tau >= 0.0 && tau <= 1.0, "tau must lie in [0, 1]");
      taus.push_back(tau);
    }
    Require(!taus.empty(), "tau list is empty");
  }
  const EvalInputs in = LoadEvalInputs(a);
  if (critical) taus = CriticalTaus(in.pos);
  const MdtTradeoff tradeoff = AvgMdtSweep(in.neg, in.pos, taus);
  EnsureParent(a.out);
  WriteTradeoffCsv(a.out, tradeoff);
  std::cout << "rows: " << tradeoff.size() << "\n"
            << "avg_mdt_s_at_tpr_0.99: " << Fixed(AvgMdtAtTpr(tradeoff, kReportTpr)) << "\n";
  return 0;
}

struct RunStreamArgs {
  std::string model, features;
  double tau = 0.5;
};

int RunRunStream(const RunStreamArgs &a) {
  Require(a.tau >= 0.0 && a.tau <= 1.0, "tau must lie in [0, 1]");
  RequireFile(a.model, "student model");
  RequireFile(a.features, "feature file");
  const StudentModel model = LoadStudent(a.model);
  const FeatureSequence feats = LoadFeatures(a.features);
  const int onset = feats.onset_frame + kUnlabeledPrefixFrames;
  if (feats.NumFrames() <= onset)
    throw Error(ErrorKind::kUtteranceTooShort,
                std::to_string(feats.NumFrames()) + " frames, decisions start at frame " +
                    std::to_string(onset));
  const StudentOutput out = StudentForward(model, feats);
  std::string text;
  for (int t = 0; t < out.signal.NumFrames(); ++t)
    text += std::to_string(t) + "," + Fixed(t / kFramesPerSecond) + "," +
            Fixed(out.signal.scores[t]) + "\n";
  const DecisionOutcome d = DecideVariable(out.signal, {a.tau, std::nullopt});
  if (d.decision == Decision::kAccept)
    text += "accept\n";
  else
    text += "reject at " + Fixed(*d.mdt_s, 3) + "s\n";
  std::cout << text;
  return 0;
}

int Main(int argc, char **argv) {
  CLI::App app{"Streaming false trigger mitigation toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value config file; command-line flags win");

  auto *gen = app.add_subcommand("gen-corpus", "Generate a seeded synthetic corpus");
  GenCorpusArgs gen_args;
  {
    CorpusConfig &c = gen_args.cfg;
    gen->add_option("--out", gen_args.out, "Corpus root directory")->required();
    gen->add_flag("--force", gen_args.force, "Overwrite an existing non-empty directory");
    gen->add_option("--seed", c.seed, "Generator seed");
    gen->add_option("--train-true", c.train.true_triggers);
    gen->add_option("--train-false", c.train.false_triggers);
    gen->add_option("--cv-true", c.cv.true_triggers);
    gen->add_option("--cv-false", c.cv.false_triggers);
    gen->add_option("--eval-true", c.eval.true_triggers);
    gen->add_option("--eval-false", c.eval.false_triggers);
    gen->add_option("--augment-true", c.augment_true, "Extra true triggers added to train");
    gen->add_option("--delta", c.delta, "Class separation of the acoustic features");
    gen->add_option("--evidence-ramp", c.evidence_ramp_s, "Seconds for the class shift to reach full strength");
    gen->add_option("--latent-std", c.latent_std);
    gen->add_option("--lattice-sharpness", c.lattice_sharpness);
    gen->add_option("--noise-std", c.noise_std);
    gen->add_option("--noise-correlation", c.noise_correlation);
    gen->add_option("--true-mean-duration", c.true_mean_duration_s, "Seconds");
    gen->add_option("--false-mean-duration", c.false_mean_duration_s, "Seconds");
    gen->add_option("--min-duration", c.min_duration_s, "Seconds");
    gen->add_option("--max-duration", c.max_duration_s, "Seconds");
    gen->add_option("--vocab-size", c.vocab_size);
    gen->add_option("--word-latent-coupling", c.word_latent_coupling);
    gen->footer(
        "Writes <out>/{train,cv,eval}.manifest, <out>/features/*.ftmf and\n"
        "<out>/lattices/*.lat. Manifest rows are tab-separated:\n"
        "  id, class_label, num_frames, feature_path, lattice_path ('-' if none)");
  }

  auto *tt = app.add_subcommand("train-teacher", "Train the lattice teacher");
  TrainTeacherArgs tt_args;
  tt->add_option("--corpus", tt_args.corpus, "Corpus root")->required();
  tt->add_option("--out", tt_args.out, "Teacher weight file")->required();
  tt->add_option("--log", tt_args.log, "Epoch CSV (default <out>.log.csv)");
  tt->add_option("--vocab-size", tt_args.model.vocab_size);
  tt->add_option("--layers", tt_args.model.num_layers);
  AddTrainingOptions(tt, &tt_args.train);
  tt->footer("Epoch CSV columns: epoch,train_loss,cv_auc");

  auto *emb = app.add_subcommand("embed", "Export teacher lattice embeddings");
  EmbedArgs emb_args;
  emb->add_option("--teacher", emb_args.teacher, "Teacher weight file")->required();
  emb->add_option("--corpus", emb_args.corpus, "Corpus root")->required();
  emb->add_option("--out", emb_args.out, "Embedding table file")->required();
  emb->add_option("--split", emb_args.split, "train, cv, eval or all");

  auto *ts = app.add_subcommand("train-student", "Train the acoustic student");
  TrainStudentArgs ts_args;
  ts->add_option("--corpus", ts_args.corpus, "Corpus root")->required();
  ts->add_option("--embeddings", ts_args.embeddings, "Teacher embedding table");
  ts->add_option("--out", ts_args.out, "Student weight file")->required();
  ts->add_option("--log", ts_args.log, "Epoch CSV (default <out>.log.csv)");
  ts->add_option("--alpha", ts_args.alpha, "Weight of the embedding loss; 0 trains the baseline");
  ts->add_flag("--deterministic", ts_args.deterministic, "Single-threaded run");
  ts->add_option("--threads", ts_args.threads, "Threads for CV scoring");
  ts->add_option("--hidden", ts_args.model.hidden_dim, "LSTM cells per layer");
  ts->add_option("--layers", ts_args.model.num_layers, "LSTM layers");
  ts->add_option("--embedding-dim", ts_args.model.embedding_dim);
  AddTrainingOptions(ts, &ts_args.train);
  ts->footer("Epoch CSV columns: epoch,train_loss,cv_auc");

  auto *ef = app.add_subcommand("eval-fixed", "Evaluate with fixed decision delays");
  EvalArgs ef_args;
  ef->add_option("--model", ef_args.model, "Student weight file")->required();
  ef->add_option("--corpus", ef_args.corpus, "Corpus root")->required();
  ef->add_option("--out", ef_args.out, "Output directory")->required();
  ef->add_option("--split", ef_args.split, "train, cv, eval or all");
  ef->add_option("--td", ef_args.delays, "Comma-separated delays in seconds, or utt-len");
  ef->add_option("--threads", ef_args.threads);
  ef->footer(
      "Writes <out>/summary.csv with columns td,auc,far_at_0.99 (one row per\n"
      "delay) and <out>/roc_td_<td>.csv with columns tau,far,tpr.");

  auto *es = app.add_subcommand("eval-stream", "Evaluate the variable-delay policy");
  EvalArgs es_args;
  es->add_option("--model", es_args.model, "Student weight file")->required();
  es->add_option("--corpus", es_args.corpus, "Corpus root")->required();
  es->add_option("--out", es_args.out, "Trade-off CSV")->required();
  es->add_option("--split", es_args.split, "train, cv, eval or all");
  es->add_option("--taus", es_args.taus,
                 "'critical' (every threshold where the TPR changes) or a comma list");
  es->add_option("--threads", es_args.threads);
  es->footer("CSV columns: tau,tpr,avg_mdt_s (tau ascending)");

  auto *rs = app.add_subcommand("run-stream", "Score one utterance frame by frame");
  RunStreamArgs rs_args;
  rs->add_option("--model", rs_args.model, "Student weight file")->required();
  rs->add_option("--features", rs_args.features, "Feature file")->required();
  rs->add_option("--tau", rs_args.tau, "Rejection threshold");
  rs->footer(
      "Prints one line per frame, frame_index,time_s,score, followed by\n"
      "'accept' or 'reject at <seconds>s'.");

  const std::vector<CLI::App *> subs{gen, tt, emb, ts, ef, es, rs};
  for (CLI::App *sub : subs) {
    sub->add_option("--config", config_path, "key=value config file; command-line flags win");
    for (CLI::Option *opt : sub->get_options()) opt->run_callback_for_default();
  }

  try {
    if (const auto path = FindConfigArg(argc, argv)) ApplyConfig(subs, ReadConfigFile(*path));
    ApplySeedEnv(subs);
  } catch (const Error &e) {
    std::cerr << "ftm: error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error &e) {
    std::cerr << "ftm: error: bad config value: " << e.what() << "\n";
    return 1;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }

  CLI::App *sub = app.get_subcommands().front();
  try {
    if (sub == gen) return RunGenCorpus(gen_args);
    if (sub == tt) return RunTrainTeacher(tt_args);
    if (sub == emb) return RunEmbed(emb_args);
    if (sub == ts) return RunTrainStudent(ts_args);
    if (sub == ef) return RunEvalFixed(ef_args);
    if (sub == es) return RunEvalStream(es_args);
    if (sub == rs) return RunRunStream(rs_args);
  } catch (const Error &e) {
    std::cerr << "ftm " << sub->get_name() << ": error: " << e.what() << "\n";
    return 1;
  } catch (const fs::filesystem_error &e) {
    std::cerr << "ftm " << sub->get_name() << ": error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace
}  // namespace ftm

int main(int argc, char **argv) { return ftm::Main(argc, argv); }
