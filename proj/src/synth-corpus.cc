// src/synth-corpus.cc

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

#include "ftm/synth-corpus.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ftm/binary-io.h"
#include "ftm/error.h"
#include "ftm/feature-fbank.h"

namespace ftm {

namespace fs = std::filesystem;

namespace {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t Fnv1a(const std::string &s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

int UniformInt(Rng *rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(*rng);
}

double Uniform(Rng *rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(*rng);
}

double DrawDuration(const CorpusConfig &cfg, int label, Rng *rng) {
  const double mean = label == kTrueTrigger ? cfg.true_mean_duration_s : cfg.false_mean_duration_s;
  const double sigma = cfg.duration_log_sigma;
  // Log-normal with the requested arithmetic mean.
  std::normal_distribution<double> normal(std::log(mean) - 0.5 * sigma * sigma, sigma);
  return std::clamp(std::exp(normal(*rng)), cfg.min_duration_s, cfg.max_duration_s);
}

double RampWeight(const CorpusConfig &cfg, int frame) {
  const double ramp_frames = cfg.evidence_ramp_s * kFramesPerSecond;
  const double elapsed = frame - kUnlabeledPrefixFrames + 1;
  return ramp_frames <= elapsed ? 1.0 : elapsed / ramp_frames;
}

FeatureSequence DrawFeatures(const CorpusConfig &cfg, const Vector &direction, double latent,
                             int num_frames, Rng *rng) {
  std::normal_distribution<double> normal;
  // Smooth per-utterance spectral envelope, orthogonal to the class direction.
  Vector envelope(kNumMelBins);
  const double level = 0.5 * normal(*rng);
  const double tilt = normal(*rng);
  for (int d = 0; d < kNumMelBins; ++d)
    envelope[d] = level + tilt * (d / (kNumMelBins - 1.0) - 0.5) + 0.3 * normal(*rng);
  envelope -= envelope.dot(direction) * direction;

  const double rho = cfg.noise_correlation;
  const double innovation = cfg.noise_std * std::sqrt(1.0 - rho * rho);
  Vector noise(kNumMelBins);
  for (int d = 0; d < kNumMelBins; ++d) noise[d] = cfg.noise_std * normal(*rng);

  FeatureSequence feats;
  feats.frames.resize(num_frames, kNumMelBins);
  for (int t = 0; t < num_frames; ++t) {
    if (t > 0)
      for (int d = 0; d < kNumMelBins; ++d) noise[d] = rho * noise[d] + innovation * normal(*rng);
    Vector frame = envelope + noise;
    if (t >= kUnlabeledPrefixFrames) frame += RampWeight(cfg, t) * latent * cfg.delta * direction;
    feats.frames.row(t) = frame.cast<float>().transpose();
  }
  return feats;
}

// Slot-structured DAG: start -> slot 1 -> ... -> slot K -> end with every
// hypothesis in a slot linked to every hypothesis of the next.
// The lattice looks like a true trigger's (confident, near-linear) or a false
// trigger's (branchy, flat posteriors) depending on the latent directedness.
// Word ids are ranked by how typical they are of device-directed speech. The
// drawn rank follows the latent directedness with unit-variance jitter.
int DrawWord(const CorpusConfig &cfg, double latent, Rng *rng) {
  const double z = cfg.word_latent_coupling * latent + std::normal_distribution<double>()(*rng);
  const int w = static_cast<int>(std::floor(cfg.vocab_size * 0.5 * std::erfc(-z / std::sqrt(2.0))));
  return std::clamp(w, 0, cfg.vocab_size - 1);
}

Lattice DrawLattice(const CorpusConfig &cfg, double latent, double duration_s, Rng *rng) {
  const bool branchy = Uniform(rng, 0.0, 1.0) < Sigmoid(-cfg.lattice_sharpness * latent);
  const int label = branchy ? kFalseTrigger : kTrueTrigger;
  const LatticeShape &shape = branchy ? cfg.false_lattice : cfg.true_lattice;
  int remaining = UniformInt(rng, shape.min_nodes, shape.max_nodes) - 2;
  std::vector<int> slot_sizes;
  while (remaining > 0) {
    const int k = std::min(remaining, UniformInt(rng, shape.min_branch, shape.max_branch));
    slot_sizes.push_back(k);
    remaining -= k;
  }

  std::normal_distribution<double> normal;
  Lattice lattice;
  lattice.nodes.push_back({UniformInt(rng, 0, cfg.vocab_size - 1), 1.0, 0.0, 0.0, 0.0});
  std::vector<int> previous{0};
  const double slot_duration = duration_s / std::max<size_t>(slot_sizes.size(), 1);
  for (int k : slot_sizes) {
    // Posteriors within a slot sum to one. True triggers have one dominant
    // hypothesis; false triggers spread mass over the alternatives.
    std::vector<double> post(k);
    if (label == kTrueTrigger) {
      const double top = k == 1 ? 1.0 : Uniform(rng, 0.85, 0.99);
      post[0] = top;
      double rest = 0.0;
      for (int j = 1; j < k; ++j) rest += (post[j] = Uniform(rng, 0.1, 1.0));
      for (int j = 1; j < k; ++j) post[j] *= (1.0 - top) / rest;
    } else {
      std::gamma_distribution<double> gamma(1.0, 1.0);
      double total = 0.0;
      for (int j = 0; j < k; ++j) total += (post[j] = gamma(*rng) + 1e-6);
      for (int j = 0; j < k; ++j) post[j] /= total;
    }
    std::vector<int> current;
    for (int j = 0; j < k; ++j) {
      const double am_mean = label == kTrueTrigger ? -1.0 : -2.0;
      LatticeNode node;
      node.word_id = DrawWord(cfg, latent, rng);
      node.posterior = post[j];
      node.am_score = am_mean + 0.3 * latent + 0.6 * normal(*rng);
      node.lm_score = -2.0 + normal(*rng);
      node.duration_s = slot_duration * Uniform(rng, 0.7, 1.3);
      current.push_back(lattice.NumNodes());
      lattice.nodes.push_back(node);
    }
    for (int from : previous)
      for (int to : current) lattice.edges.emplace_back(from, to);
    previous = std::move(current);
  }
  const int end = lattice.NumNodes();
  lattice.nodes.push_back({UniformInt(rng, 0, cfg.vocab_size - 1), 1.0, 0.0, 0.0, 0.0});
  for (int from : previous) lattice.edges.emplace_back(from, end);
  lattice.start = 0;
  lattice.end = end;
  return lattice;
}

std::string MakeId(const char *split, int label, int index) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%s_%06d", split, label == kTrueTrigger ? "tt" : "ft", index);
  return buf;
}

void AppendSplit(const CorpusConfig &cfg, const char *split, const SplitCounts &counts,
                 std::vector<UtteranceRecord> *out) {
  for (int i = 0; i < counts.true_triggers; ++i)
    out->push_back(GenerateUtterance(cfg, MakeId(split, kTrueTrigger, i), kTrueTrigger));
  for (int i = 0; i < counts.false_triggers; ++i)
    out->push_back(GenerateUtterance(cfg, MakeId(split, kFalseTrigger, i), kFalseTrigger));
}

void CheckShape(const LatticeShape &s, const char *which) {
  if (s.min_nodes < 3 || s.max_nodes < s.min_nodes || s.min_branch < 1 || s.max_branch < s.min_branch)
    throw Error(ErrorKind::kConfig, std::string(which) + " lattice shape");
}

}  // namespace

void CorpusConfig::Validate() const {
  auto fail = [](const std::string &why) { throw Error(ErrorKind::kConfig, why); };
  if (train.true_triggers < 1 || train.false_triggers < 1) fail("train needs >= 1 per class");
  if (eval.true_triggers < 1 || eval.false_triggers < 1) fail("eval needs >= 1 per class");
  if (cv.true_triggers < 0 || cv.false_triggers < 0 || augment_true < 0) fail("negative count");
  if (!(delta >= 0.0)) fail("delta must be >= 0");
  if (!(evidence_ramp_s >= 0.0)) fail("evidence ramp must be >= 0");
  if (!(latent_std >= 0.0) || !(lattice_sharpness >= 0.0) || !(word_latent_coupling >= 0.0))
    fail("latent parameters");
  if (!(noise_std > 0.0) || !(noise_correlation >= 0.0 && noise_correlation < 1.0))
    fail("noise parameters");
  if (!(true_mean_duration_s > 0.0 && false_mean_duration_s > 0.0 && duration_log_sigma >= 0.0))
    fail("duration parameters");
  if (!(min_duration_s * kFramesPerSecond > kUnlabeledPrefixFrames) || max_duration_s < min_duration_s)
    fail("minimum duration must outlast the unlabeled prefix");
  if (vocab_size < 1) fail("vocab size");
  CheckShape(true_lattice, "true-trigger");
  CheckShape(false_lattice, "false-trigger");
}

Vector ClassDirection(uint64_t seed) {
  Rng rng(SplitMix64(seed ^ 0xd1ec7105ull));
  std::normal_distribution<double> normal;
  Vector v(kNumMelBins);
  for (int d = 0; d < kNumMelBins; ++d) v[d] = normal(rng);
  return v.normalized();
}

UtteranceRecord GenerateUtterance(const CorpusConfig &cfg, const std::string &id, int class_label) {
  Rng rng(SplitMix64(cfg.seed ^ Fnv1a(id)));
  UtteranceRecord r;
  r.id = id;
  r.class_label = class_label;
  const double duration = DrawDuration(cfg, class_label, &rng);
  const int num_frames = static_cast<int>(std::lround(duration * kFramesPerSecond));
  const double latent = std::normal_distribution<double>(
      class_label == kTrueTrigger ? 1.0 : -1.0, cfg.latent_std)(rng);
  r.features = DrawFeatures(cfg, ClassDirection(cfg.seed), latent, num_frames, &rng);
  r.lattice = DrawLattice(cfg, latent, num_frames / kFramesPerSecond, &rng);
  return r;
}

Corpus GenerateCorpus(const CorpusConfig &cfg) {
  cfg.Validate();
  Corpus corpus;
  AppendSplit(cfg, "train", cfg.train, &corpus.train);
  for (int i = 0; i < cfg.augment_true; ++i)
    corpus.train.push_back(GenerateUtterance(cfg, MakeId("aug", kTrueTrigger, i), kTrueTrigger));
  AppendSplit(cfg, "cv", cfg.cv, &corpus.cv);
  AppendSplit(cfg, "eval", cfg.eval, &corpus.eval);
  return corpus;
}

namespace {

void WriteSplit(const std::vector<UtteranceRecord> &records, const fs::path &root, const char *name) {
  std::ofstream manifest = OpenForWrite(root / (std::string(name) + ".manifest"));
  for (const auto &r : records) {
    const std::string feat_rel = "features/" + r.id + ".ftmf";
    std::string lat_rel = "-";
    SaveFeatures(root / feat_rel, r.features);
    if (r.lattice) {
      lat_rel = "lattices/" + r.id + ".lat";
      WriteLattice(root / lat_rel, *r.lattice);
    }
    manifest << r.id << '\t' << r.class_label << '\t' << r.NumFrames() << '\t' << feat_rel << '\t'
             << lat_rel << '\n';
  }
  if (!manifest) throw Error(ErrorKind::kIo, std::string("write failed: ") + name);
}

}  // namespace

void WriteCorpus(const Corpus &corpus, const fs::path &root) {
  fs::create_directories(root / "features");
  fs::create_directories(root / "lattices");
  WriteSplit(corpus.train, root, "train");
  WriteSplit(corpus.cv, root, "cv");
  WriteSplit(corpus.eval, root, "eval");
}

std::vector<UtteranceRecord> LoadManifest(const fs::path &manifest) {
  if (!fs::exists(manifest)) throw Error(ErrorKind::kMissingFile, manifest.string());
  std::ifstream is = OpenForRead(manifest);
  const fs::path root = manifest.parent_path();
  std::vector<UtteranceRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::string where = manifest.string() + ":" + std::to_string(line_no);
    std::istringstream fields(line);
    std::string id, label, frames, feat_rel, lat_rel;
    if (!std::getline(fields, id, '\t') || !std::getline(fields, label, '\t') ||
        !std::getline(fields, frames, '\t') || !std::getline(fields, feat_rel, '\t') ||
        !std::getline(fields, lat_rel, '\t'))
      throw Error(ErrorKind::kCorruptRecord, where + ": expected 5 tab-separated fields");
    UtteranceRecord r;
    r.id = id;
    int declared_frames = 0;
    try {
      r.class_label = std::stoi(label);
      declared_frames = std::stoi(frames);
    } catch (const std::logic_error &) {
      throw Error(ErrorKind::kCorruptRecord, where + ": non-numeric label or frame count");
    }
    if (r.class_label != kFalseTrigger && r.class_label != kTrueTrigger)
      throw Error(ErrorKind::kCorruptRecord, where + ": label must be 0 or 1");
    if (declared_frames <= kUnlabeledPrefixFrames)
      throw Error(ErrorKind::kCorruptRecord, where + ": T=" + frames + " does not outlast the unlabeled prefix");
    if (!fs::exists(root / feat_rel)) throw Error(ErrorKind::kMissingFile, (root / feat_rel).string());
    try {
      r.features = LoadFeatures(root / feat_rel);
    } catch (const Error &e) {
      throw Error(ErrorKind::kCorruptRecord, where + ": " + e.what());
    }
    if (r.NumFrames() != declared_frames)
      throw Error(ErrorKind::kCorruptRecord, where + ": frame count differs from feature file");
    if (lat_rel != "-") {
      if (!fs::exists(root / lat_rel)) throw Error(ErrorKind::kMissingFile, (root / lat_rel).string());
      try {
        r.lattice = ReadLattice(root / lat_rel);
      } catch (const Error &e) {
        throw Error(ErrorKind::kCorruptRecord, where + ": " + e.what());
      }
    }
    records.push_back(std::move(r));
  }
  return records;
}

Corpus LoadCorpus(const fs::path &root) {
  Corpus corpus;
  corpus.train = LoadManifest(root / "train.manifest");
  corpus.cv = LoadManifest(root / "cv.manifest");
  corpus.eval = LoadManifest(root / "eval.manifest");
  return corpus;
}

}  // namespace ftm
