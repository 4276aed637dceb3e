// include/ftm/utterance.h

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

#ifndef FTM_UTTERANCE_H_
#define FTM_UTTERANCE_H_

#include <map>
#include <optional>
#include <string>

#include "ftm/feature-fbank.h"
#include "ftm/lattice.h"
#include "ftm/nnet-common.h"

namespace ftm {

// Frames before the trigger-phrase detection event carry no label and no
// loss; decisions and delays are measured from this frame.
constexpr int kUnlabeledPrefixFrames = 50;

enum ClassLabel : int { kFalseTrigger = 0, kTrueTrigger = 1 };

struct UtteranceRecord {
  std::string id;
  int class_label = kFalseTrigger;
  FeatureSequence features;
  std::optional<Lattice> lattice;
  std::optional<Vector> teacher_embedding;

  int NumFrames() const { return features.NumFrames(); }
  double DurationSeconds() const { return features.DurationSeconds(); }
};

// Utterance id -> 64-dim teacher embedding, ordered by id.
using EmbeddingTable = std::map<std::string, Vector>;

}  // namespace ftm

#endif  // FTM_UTTERANCE_H_
