// nnet/nnet-math.h

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

#ifndef RNTM_NNET_NNET_MATH_H_
#define RNTM_NNET_NNET_MATH_H_

#include <cmath>
#include <limits>
#include <span>

#include "nnet/matrix.h"

namespace rntm {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

/// log(sum(exp(v))) in max-shifted form. Returns -inf iff every entry is
/// -inf. Throws ContractError on empty input.
double LogSumExp(std::span<const double> values);

/// Two-argument form used inside the lattice recursions.
inline double LogAdd(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

inline double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// log(1 / (1 + exp(-x))), computed without overflow for large |x|.
inline double LogSigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

Vector LogSoftmax(const Vector &logits);
Vector Softmax(const Vector &logits);

/// Index of the largest entry; ties go to the lowest index.
int ArgMax(const Vector &v);

}  // namespace rntm

#endif  // RNTM_NNET_NNET_MATH_H_
