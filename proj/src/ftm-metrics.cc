// src/ftm-metrics.cc

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

#include "ftm/ftm-metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "ftm/binary-io.h"
#include "ftm/error.h"

namespace ftm {

RocCurve RocFromScores(std::span<const double> pos_scores, std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty())
    throw Error(ErrorKind::kDegenerateEvaluation, "both classes need at least one score");
  std::vector<double> pos(pos_scores.begin(), pos_scores.end());
  std::vector<double> neg(neg_scores.begin(), neg_scores.end());
  std::sort(pos.begin(), pos.end(), std::greater<>());
  std::sort(neg.begin(), neg.end(), std::greater<>());
  const double n_pos = static_cast<double>(pos.size());
  const double n_neg = static_cast<double>(neg.size());

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  size_t ip = 0, in = 0;
  // Descending sweep over distinct scores. Each threshold accepts every
  // score >= tau; tied positives and negatives enter together.
  while (ip < pos.size() || in < neg.size()) {
    double tau = -std::numeric_limits<double>::infinity();
    if (ip < pos.size()) tau = std::max(tau, pos[ip]);
    if (in < neg.size()) tau = std::max(tau, neg[in]);
    while (ip < pos.size() && pos[ip] >= tau) ++ip;
    while (in < neg.size() && neg[in] >= tau) ++in;
    curve.points.push_back({tau, in / n_neg, ip / n_pos});
  }
  const double floor_tau = std::min(0.0, std::min(pos.back(), neg.back()));
  if (curve.points.back().tau > floor_tau) curve.points.push_back({floor_tau, 1.0, 1.0});

  for (size_t k = 1; k < curve.points.size(); ++k) {
    const RocPoint &a = curve.points[k - 1], &b = curve.points[k];
    curve.auc += (b.far - a.far) * (a.tpr + b.tpr) * 0.5;
  }
  return curve;
}

double FarAtTpr(const RocCurve &curve, double target_tpr) {
  if (curve.points.empty()) throw Error(ErrorKind::kDegenerateEvaluation, "empty ROC curve");
  if (!(target_tpr > 0.0 && target_tpr <= 1.0))
    throw Error(ErrorKind::kConfig, "target TPR outside (0,1]");
  const auto &pts = curve.points;
  for (size_t k = 0; k < pts.size(); ++k) {
    if (pts[k].tpr < target_tpr) continue;
    if (k == 0) return pts[0].far;
    const RocPoint &a = pts[k - 1], &b = pts[k];
    const double frac = (target_tpr - a.tpr) / (b.tpr - a.tpr);
    return a.far + frac * (b.far - a.far);
  }
  return pts.back().far;
}

MdtTradeoff AvgMdtSweep(std::span<const MitigationSignal> false_triggers,
                        std::span<const MitigationSignal> true_triggers,
                        std::span<const double> taus) {
  if (false_triggers.empty() || true_triggers.empty() || taus.empty())
    throw Error(ErrorKind::kDegenerateEvaluation, "empty signal set or threshold list");
  std::vector<double> sorted(taus.begin(), taus.end());
  std::sort(sorted.begin(), sorted.end());
  MdtTradeoff rows;
  rows.reserve(sorted.size());
  for (double tau : sorted) {
    const PolicyConfig cfg{tau, std::nullopt};
    int accepted = 0;
    for (const auto &s : true_triggers)
      if (DecideVariable(s, cfg).decision == Decision::kAccept) ++accepted;
    double total_mdt = 0.0;
    for (const auto &s : false_triggers) {
      const DecisionOutcome out = DecideVariable(s, cfg);
      total_mdt += out.mdt_s ? *out.mdt_s : s.MonitoredSeconds();
    }
    rows.push_back({tau, static_cast<double>(accepted) / true_triggers.size(),
                    total_mdt / false_triggers.size()});
  }
  return rows;
}

std::vector<double> CriticalTaus(std::span<const MitigationSignal> true_triggers) {
  std::vector<double> taus{0.0, 1.0};
  for (const auto &s : true_triggers) {
    if (s.NumMonitoredFrames() <= 0) throw Error(ErrorKind::kNoMonitoredFrames, "");
    taus.push_back(*std::min_element(s.scores.begin() + s.onset_frame, s.scores.end()));
  }
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  return taus;
}

double AvgMdtAtTpr(const MdtTradeoff &tradeoff, double target_tpr) {
  if (tradeoff.empty()) throw Error(ErrorKind::kDegenerateEvaluation, "empty trade-off");
  // Rows ascend in tau and tpr does not increase along them.
  for (size_t k = 0; k < tradeoff.size(); ++k) {
    if (tradeoff[k].tpr >= target_tpr) continue;
    if (k == 0) return tradeoff[0].avg_mdt_s;
    const MdtRow &a = tradeoff[k - 1], &b = tradeoff[k];
    const double frac = (a.tpr - target_tpr) / (a.tpr - b.tpr);
    return a.avg_mdt_s + frac * (b.avg_mdt_s - a.avg_mdt_s);
  }
  return tradeoff.back().avg_mdt_s;
}

std::vector<double> ScoresAtDelay(std::span<const MitigationSignal> signals,
                                  std::optional<double> delay_s) {
  std::vector<double> out;
  out.reserve(signals.size());
  for (const auto &s : signals) out.push_back(s.scores[FixedDecisionFrame(s, delay_s)]);
  return out;
}

namespace {
std::string FormatTau(double tau) {
  if (std::isinf(tau)) return tau > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", tau);
  return buf;
}
}  // namespace

void WriteRocCsv(const std::filesystem::path &path, const RocCurve &curve) {
  std::ofstream os = OpenForWrite(path);
  os << "tau,far,tpr\n";
  char buf[128];
  for (auto it = curve.points.rbegin(); it != curve.points.rend(); ++it) {
    std::snprintf(buf, sizeof(buf), ",%.6f,%.6f\n", it->far, it->tpr);
    os << FormatTau(it->tau) << buf;
  }
  if (!os) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

void WriteTradeoffCsv(const std::filesystem::path &path, const MdtTradeoff &tradeoff) {
  std::ofstream os = OpenForWrite(path);
  os << "tau,tpr,avg_mdt_s\n";
  char buf[128];
  for (const auto &row : tradeoff) {
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f\n", row.tau, row.tpr, row.avg_mdt_s);
    os << buf;
  }
  if (!os) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

}  // namespace ftm
