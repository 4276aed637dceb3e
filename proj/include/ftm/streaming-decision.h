// include/ftm/streaming-decision.h

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

#ifndef FTM_STREAMING_DECISION_H_
#define FTM_STREAMING_DECISION_H_

#include <optional>
#include <vector>

#include "ftm/utterance.h"

namespace ftm {

/// Per-frame device-directedness scores, each strictly inside (0, 1).
/// onset_frame is the trigger-phrase detection event: the first monitored
/// frame and the origin of every mitigation delay.
struct MitigationSignal {
  std::vector<double> scores;
  int onset_frame = kUnlabeledPrefixFrames;

  int NumFrames() const { return static_cast<int>(scores.size()); }
  int NumMonitoredFrames() const { return NumFrames() - onset_frame; }
  // Remaining utterance length after the detection event, in seconds.
  double MonitoredSeconds() const { return NumMonitoredFrames() / kFramesPerSecond; }
};

enum class Decision { kAccept, kReject };

struct DecisionOutcome {
  Decision decision = Decision::kAccept;
  std::optional<double> mdt_s;  // set iff rejected
  int decision_frame = 0;
};

struct PolicyConfig {
  double tau = 0.5;
  // Fixed policy only; nullopt decides on the last frame ("utt-len").
  std::optional<double> fixed_delay_s;
};

/// Frame inspected by the fixed policy: onset + round(delay * 100), clipped
/// to the last frame.
int FixedDecisionFrame(const MitigationSignal &signal, std::optional<double> delay_s);

/// Rejects iff the score at the fixed decision frame is strictly below tau.
DecisionOutcome DecideFixed(const MitigationSignal &signal, const PolicyConfig &cfg);

/// Scans from onset_frame and rejects at the first frame whose score is
/// strictly below tau; otherwise accepts at the last frame.
DecisionOutcome DecideVariable(const MitigationSignal &signal, const PolicyConfig &cfg);

}  // namespace ftm

#endif  // FTM_STREAMING_DECISION_H_
