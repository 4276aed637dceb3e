// include/ftm/ftm-metrics.h

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

#ifndef FTM_FTM_METRICS_H_
#define FTM_FTM_METRICS_H_

#include <filesystem>
#include <span>
#include <vector>

#include "ftm/streaming-decision.h"

namespace ftm {

// An utterance is accepted at threshold tau iff its score >= tau.
// TPR = accepted fraction of true triggers, FAR = accepted fraction of false
// triggers.
struct RocPoint {
  double tau;
  double far;
  double tpr;
};

struct RocCurve {
  std::vector<RocPoint> points;  // far ascending (tau descending)
  double auc = 0.0;
};

/// Sweeps tau over {min(0, min score)} U distinct scores U {+inf}; AUC is the
/// trapezoid area under (far, tpr). Throws kDegenerateEvaluation if either
/// class is empty.
RocCurve RocFromScores(std::span<const double> pos_scores, std::span<const double> neg_scores);

/// FAR at target_tpr by linear interpolation between the bracketing points.
double FarAtTpr(const RocCurve &curve, double target_tpr);

struct MdtRow {
  double tau;
  double tpr;
  double avg_mdt_s;
};
using MdtTradeoff = std::vector<MdtRow>;

/// Variable-policy sweep. Unrejected false triggers are charged their whole
/// monitored length. Rows come out in ascending tau.
MdtTradeoff AvgMdtSweep(std::span<const MitigationSignal> false_triggers,
                        std::span<const MitigationSignal> true_triggers,
                        std::span<const double> taus);

/// Thresholds at which the variable-policy TPR changes: 0, 1, and the minimum
/// monitored score of every true trigger. Sorted ascending, unique.
std::vector<double> CriticalTaus(std::span<const MitigationSignal> true_triggers);

/// Average MDT at target_tpr, interpolated linearly in tpr between rows.
double AvgMdtAtTpr(const MdtTradeoff &tradeoff, double target_tpr);

/// Utterance-level scores for the fixed policy: the signal value at the
/// fixed decision frame (nullopt delay = last frame).
std::vector<double> ScoresAtDelay(std::span<const MitigationSignal> signals,
                                  std::optional<double> delay_s);

// CSV writers: "tau,far,tpr" and "tau,tpr,avg_mdt_s", tau ascending,
// 6 decimals.
void WriteRocCsv(const std::filesystem::path &path, const RocCurve &curve);
void WriteTradeoffCsv(const std::filesystem::path &path, const MdtTradeoff &tradeoff);

}  // namespace ftm

#endif  // FTM_FTM_METRICS_H_
