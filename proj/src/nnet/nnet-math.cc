// nnet/nnet-math.cc

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

#include "nnet/nnet-math.h"

#include <algorithm>

#include "base/rntm-common.h"

namespace rntm {

double LogSumExp(std::span<const double> values) {
  RNTM_REQUIRE(!values.empty(), "LogSumExp: empty input");
  const double max = *std::max_element(values.begin(), values.end());
  if (max == kLogZero) return kLogZero;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max);
  return max + std::log(sum);
}

Vector LogSoftmax(const Vector &logits) {
  const double lse = LogSumExp(std::span<const double>(logits.data(), logits.size()));
  return logits.array() - lse;
}

Vector Softmax(const Vector &logits) { return LogSoftmax(logits).array().exp(); }

int ArgMax(const Vector &v) {
  int best = 0;
  for (int i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

}  // namespace rntm
