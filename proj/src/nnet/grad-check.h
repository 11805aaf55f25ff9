// nnet/grad-check.h

// Copyright 2026  The rntm Authors

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

#ifndef RNTM_NNET_GRAD_CHECK_H_
#define RNTM_NNET_GRAD_CHECK_H_

#include <cstdint>
#include <functional>
#include <string>

#include "nnet/param-store.h"

namespace rntm {

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;  // tensor holding the worst coordinate
  int worst_index = -1;
  int coords_checked = 0;
  bool ok = true;           // false if the loss went non-finite
  std::string failure;      // set when !ok
};

struct GradCheckOptions {
  double eps = 1e-4;
  /// Number of coordinates to sample uniformly over all tensors; <= 0 checks
  /// every coordinate.
  int max_coords = 64;
  uint64_t seed = 1;
  /// Only tensors whose names match this glob are perturbed.
  std::string pattern = "*";
};

/// Compares the gradients already stored in `params` against central
/// differences (loss(v + eps) - loss(v - eps)) / (2 eps). Relative error per
/// coordinate is |a - n| / max(|a|, |n|, 1e-8). Values are restored exactly
/// after each probe.
GradCheckResult FiniteDiffCheck(const std::function<double(const ParamStore &)> &loss_fn,
                                ParamStore *params, const GradCheckOptions &opts = {});

}  // namespace rntm

#endif  // RNTM_NNET_GRAD_CHECK_H_
