// include/ftm/synth-corpus.h

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

#ifndef FTM_SYNTH_CORPUS_H_
#define FTM_SYNTH_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ftm/utterance.h"

namespace ftm {

struct SplitCounts {
  int true_triggers = 0;
  int false_triggers = 0;
  int Total() const { return true_triggers + false_triggers; }
};

struct LatticeShape {
  int min_nodes, max_nodes;    // including the start and end nodes
  int min_branch, max_branch;  // competing hypotheses per slot
};

struct CorpusConfig {
  uint64_t seed = 1;
  SplitCounts train{4000, 900};
  SplitCounts cv{450, 100};
  SplitCounts eval{1300, 750};
  // Extra true-trigger training utterances (positive-class augmentation).
  int augment_true = 0;

  // Every utterance draws a latent directedness u ~ N(+1, latent_std) for
  // true triggers and N(-1, latent_std) for false triggers. Frames after the
  // unlabeled prefix are shifted by r(t) * delta * u along a fixed unit
  // direction, where r rises linearly from 0 to 1 over the first
  // evidence_ramp_s seconds after the prefix. Class means settle at +delta
  // and -delta.
  double delta = 1.0;
  double evidence_ramp_s = 3.0;
  double latent_std = 0.8;
  // Probability of a branchy (false-trigger shaped) lattice is
  // sigmoid(-lattice_sharpness * u).
  double lattice_sharpness = 3.0;
  double noise_std = 1.0;
  double noise_correlation = 0.9;  // AR(1) coefficient across frames

  double true_mean_duration_s = 3.5;
  double false_mean_duration_s = 5.44;
  double duration_log_sigma = 0.35;
  double min_duration_s = 1.0;
  double max_duration_s = 15.0;

  int vocab_size = 500;
  // Strength of the link between word choice and latent directedness.
  double word_latent_coupling = 1.0;
  LatticeShape true_lattice{5, 12, 1, 2};   // confident, near-linear
  LatticeShape false_lattice{8, 25, 2, 4};  // many competing hypotheses

  /// Throws kConfig on any invariant violation.
  void Validate() const;
};

struct Corpus {
  std::vector<UtteranceRecord> train, cv, eval;
};

/// Deterministic in cfg: every utterance draws from its own PRNG stream
/// derived from (seed, id).
Corpus GenerateCorpus(const CorpusConfig &cfg);

UtteranceRecord GenerateUtterance(const CorpusConfig &cfg, const std::string &id, int class_label);

/// Unit class direction shared by every utterance of a corpus with this seed.
Vector ClassDirection(uint64_t seed);

// On-disk layout under root:
//   {train,cv,eval}.manifest  tab-separated: id label T feature_path lattice_path
//   features/<id>.ftmf, lattices/<id>.lat
// Paths in the manifest are relative to root.
void WriteCorpus(const Corpus &corpus, const std::filesystem::path &root);

/// Loads and validates one manifest. Paths resolve against the manifest's
/// directory. Errors: kMissingFile for dangling references, kCorruptRecord
/// for invariant violations (including T <= kUnlabeledPrefixFrames).
std::vector<UtteranceRecord> LoadManifest(const std::filesystem::path &manifest);

Corpus LoadCorpus(const std::filesystem::path &root);

}  // namespace ftm

#endif  // FTM_SYNTH_CORPUS_H_
