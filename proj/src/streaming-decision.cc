// src/streaming-decision.cc

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

#include "ftm/streaming-decision.h"

#include <cmath>

#include "ftm/error.h"

namespace ftm {

namespace {

void CheckSignal(const MitigationSignal &signal) {
  if (signal.onset_frame < 0 || signal.NumFrames() <= signal.onset_frame)
    throw Error(ErrorKind::kNoMonitoredFrames,
                std::to_string(signal.NumFrames()) + " frames, onset " +
                    std::to_string(signal.onset_frame));
}

void CheckPolicy(const PolicyConfig &cfg) {
  if (!(cfg.tau >= 0.0 && cfg.tau <= 1.0)) throw Error(ErrorKind::kConfig, "tau outside [0,1]");
  if (cfg.fixed_delay_s && !(*cfg.fixed_delay_s >= 0.0))
    throw Error(ErrorKind::kConfig, "negative mitigation delay");
}

}  // namespace

int FixedDecisionFrame(const MitigationSignal &signal, std::optional<double> delay_s) {
  CheckSignal(signal);
  const int last = signal.NumFrames() - 1;
  if (!delay_s) return last;
  const long offset = std::lround(*delay_s * kFramesPerSecond);
  return static_cast<int>(std::min<long>(signal.onset_frame + offset, last));
}

DecisionOutcome DecideFixed(const MitigationSignal &signal, const PolicyConfig &cfg) {
  CheckPolicy(cfg);
  DecisionOutcome out;
  out.decision_frame = FixedDecisionFrame(signal, cfg.fixed_delay_s);
  if (signal.scores[out.decision_frame] < cfg.tau) {
    out.decision = Decision::kReject;
    out.mdt_s = cfg.fixed_delay_s ? *cfg.fixed_delay_s
                                  : (out.decision_frame - signal.onset_frame) / kFramesPerSecond;
  }
  return out;
}

DecisionOutcome DecideVariable(const MitigationSignal &signal, const PolicyConfig &cfg) {
  CheckSignal(signal);
  CheckPolicy(cfg);
  for (int t = signal.onset_frame; t < signal.NumFrames(); ++t) {
    if (signal.scores[t] < cfg.tau)
      return {Decision::kReject, (t - signal.onset_frame) / kFramesPerSecond, t};
  }
  return {Decision::kAccept, std::nullopt, signal.NumFrames() - 1};
}

}  // namespace ftm
