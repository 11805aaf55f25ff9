// transducer/rnnt-oracle.h

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

// Brute-force transducer oracle shared by the unit tests and the acceptance
// suite. Not linked into any library.

#ifndef RNTM_TRANSDUCER_RNNT_ORACLE_H_
#define RNTM_TRANSDUCER_RNNT_ORACLE_H_

#include <cmath>
#include <vector>

#include "nnet/matrix.h"
#include "nnet/rng.h"

namespace rntm {
namespace testing {

// Plain softmax of one lattice row, no log-space tricks.
inline std::vector<double> NaiveSoftmax(const Matrix &logits, int row) {
  std::vector<double> p(logits.cols());
  double z = 0.0;
  for (int k = 0; k < logits.cols(); ++k) z += p[k] = std::exp(logits(row, k));
  for (double &v : p) v /= z;
  return p;
}

struct Enumeration {
  double prob = 0.0;
  int interleavings = 0;
  int valid_paths = 0;
};

// Walks every arrangement of T blanks and U labels. An arrangement is a
// complete path only if no blank leaves the last frame while labels remain,
// which is the same as requiring the final arc to be a blank.
inline Enumeration EnumeratePaths(const Matrix &logits, int T, const std::vector<int> &target,
                           int blank) {
  const int U = static_cast<int>(target.size());
  const int n = T + U;
  Enumeration e;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(mask) != U) continue;
    ++e.interleavings;
    int t = 0, u = 0;
    double p = 1.0;
    bool ok = true;
    for (int step = 0; step < n && ok; ++step) {
      const auto sm = NaiveSoftmax(logits, t * (U + 1) + u);
      if (mask & (1 << step)) {
        p *= sm[target[u]];
        ++u;
      } else {
        if (t == T - 1 && u < U) ok = false;
        p *= sm[blank];
        ++t;
      }
    }
    if (!ok) continue;
    ++e.valid_paths;
    e.prob += p;
  }
  return e;
}

inline int Binomial(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::vector<int> RandomTarget(int U, int V, int blank, Rng *rng) {
  std::vector<int> y;
  while (static_cast<int>(y.size()) < U) {
    const int k = static_cast<int>(rng->UniformInt(0, V - 1));
    if (k != blank) y.push_back(k);
  }
  return y;
}

}  // namespace testing
}  // namespace rntm

#endif  // RNTM_TRANSDUCER_RNNT_ORACLE_H_
