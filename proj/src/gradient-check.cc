// src/gradient-check.cc

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

#include "ftm/gradient-check.h"

#include <algorithm>
#include <cmath>

#include "ftm/error.h"

namespace ftm {

namespace {
double CheckedEval(const std::function<double()> &f) {
  const double v = f();
  if (!std::isfinite(v)) throw Error(ErrorKind::kNumeric, "objective is not finite");
  return v;
}
}  // namespace

double RelativeError(double analytic, double numeric, double floor) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / denom;
}

double FiniteDiffCheck(const std::function<double(std::span<const double>)> &f,
                       std::span<const double> params, std::span<const double> analytic_grad,
                       double step) {
  if (params.size() != analytic_grad.size())
    throw Error(ErrorKind::kShape, "gradient size differs from parameter size");
  std::vector<double> probe(params.begin(), params.end());
  auto eval = [&] { return CheckedEval([&] { return f(probe); }); };
  eval();
  double worst = 0.0;
  for (size_t i = 0; i < probe.size(); ++i) {
    const double saved = probe[i];
    probe[i] = saved + step;
    const double plus = eval();
    probe[i] = saved - step;
    const double minus = eval();
    probe[i] = saved;
    worst = std::max(worst, RelativeError(analytic_grad[i], (plus - minus) / (2.0 * step)));
  }
  return worst;
}

std::vector<TensorCheckResult> DirectionalGradientCheck(
    const TensorList &params, const ConstTensorList &grads,
    const std::function<double()> &loss, int num_directions, uint64_t seed, double step) {
  if (params.size() != grads.size()) throw Error(ErrorKind::kShape, "gradient layout mismatch");
  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::vector<TensorCheckResult> results;
  for (size_t t = 0; t < params.size(); ++t) {
    const int64_t n = params[t].size();
    std::vector<double> saved(params[t].data, params[t].data + n);
    std::vector<double> dir(n);
    TensorCheckResult result{params[t].name, 0.0};
    for (int d = 0; d < num_directions; ++d) {
      double norm = 0.0;
      for (auto &x : dir) {
        x = normal(rng);
        norm += x * x;
      }
      norm = std::sqrt(norm);
      double analytic = 0.0;
      for (int64_t i = 0; i < n; ++i) {
        dir[i] /= norm;
        analytic += grads[t].data[i] * dir[i];
      }
      for (int64_t i = 0; i < n; ++i) params[t].data[i] = saved[i] + step * dir[i];
      const double plus = CheckedEval(loss);
      for (int64_t i = 0; i < n; ++i) params[t].data[i] = saved[i] - step * dir[i];
      const double minus = CheckedEval(loss);
      std::copy(saved.begin(), saved.end(), params[t].data);
      result.max_relative_error = std::max(
          result.max_relative_error, RelativeError(analytic, (plus - minus) / (2.0 * step)));
    }
    results.push_back(result);
  }
  return results;
}

double MaxError(const std::vector<TensorCheckResult> &results) {
  double worst = 0.0;
  for (const auto &r : results) worst = std::max(worst, r.max_relative_error);
  return worst;
}

}  // namespace ftm
