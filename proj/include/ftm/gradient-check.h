// include/ftm/gradient-check.h

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

#ifndef FTM_GRADIENT_CHECK_H_
#define FTM_GRADIENT_CHECK_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ftm/nnet-common.h"

namespace ftm {

// |a - n| / max(|a|, |n|, floor).
double RelativeError(double analytic, double numeric, double floor = 1e-6);

/// Coordinate-wise central-difference check of analytic_grad against f at
/// params. Returns the maximum relative error. Throws kNumeric if f is not
/// finite at any probe.
double FiniteDiffCheck(const std::function<double(std::span<const double>)> &f,
                       std::span<const double> params, std::span<const double> analytic_grad,
                       double step = 1e-5);

struct TensorCheckResult {
  std::string name;
  double max_relative_error = 0.0;
};

// Directional check on a model exposed through TensorList views. For each
// tensor, draws num_directions random unit directions supported on that
// tensor alone and compares grad . v with the central difference of loss()
// along v. The model is restored to its original values afterwards.
std::vector<TensorCheckResult> DirectionalGradientCheck(
    const TensorList &params, const ConstTensorList &grads,
    const std::function<double()> &loss, int num_directions, uint64_t seed,
    double step = 1e-5);

double MaxError(const std::vector<TensorCheckResult> &results);

}  // namespace ftm

#endif  // FTM_GRADIENT_CHECK_H_
