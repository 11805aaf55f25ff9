// nnet/grad-check.cc

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

#include "nnet/grad-check.h"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "base/rntm-common.h"
#include "nnet/rng.h"

namespace rntm {

GradCheckResult FiniteDiffCheck(const std::function<double(const ParamStore &)> &loss_fn,
                                ParamStore *params, const GradCheckOptions &opts) {
  RNTM_REQUIRE(opts.eps > 0.0, "FiniteDiffCheck: eps must be positive");
  // Flatten (tensor, index) pairs over the matching tensors.
  std::vector<std::pair<std::string, int>> coords;
  for (const auto &[name, p] : *params) {
    if (!GlobMatch(opts.pattern, name)) continue;
    for (size_t i = 0; i < p.Size(); ++i) coords.emplace_back(name, static_cast<int>(i));
  }
  RNTM_REQUIRE(!coords.empty(), "FiniteDiffCheck: no coordinates match " << opts.pattern);
  if (opts.max_coords > 0 && static_cast<int>(coords.size()) > opts.max_coords) {
    Rng rng(opts.seed);
    rng.Shuffle(&coords);
    coords.resize(opts.max_coords);
  }

  GradCheckResult result;
  for (const auto &[name, index] : coords) {
    Param &p = params->Get(name);
    const double saved = p.value[index];
    p.value[index] = saved + opts.eps;
    const double plus = loss_fn(*params);
    p.value[index] = saved - opts.eps;
    const double minus = loss_fn(*params);
    p.value[index] = saved;
    if (!std::isfinite(plus) || !std::isfinite(minus)) {
      result.ok = false;
      result.worst_param = name;
      result.worst_index = index;
      result.failure = "non-finite loss while perturbing " + name + "[" +
                       std::to_string(index) + "]";
      return result;
    }
    const double numeric = (plus - minus) / (2.0 * opts.eps);
    const double analytic = p.grad[index];
    const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
    const double rel = std::abs(analytic - numeric) / denom;
    ++result.coords_checked;
    if (rel > result.max_rel_error || result.worst_index < 0) {
      result.max_rel_error = std::max(rel, result.max_rel_error);
      result.worst_param = name;
      result.worst_index = index;
    }
  }
  return result;
}

}  // namespace rntm
