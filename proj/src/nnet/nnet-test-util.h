// nnet/nnet-test-util.h

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

// Helpers shared by the unit tests and the acceptance suite. Not linked into
// any library.

#ifndef RNTM_NNET_NNET_TEST_UTIL_H_
#define RNTM_NNET_NNET_TEST_UTIL_H_

#include <string>

#include "nnet/matrix.h"
#include "nnet/param-store.h"
#include "nnet/rng.h"

namespace rntm {
namespace testing {

inline void RandomizeParams(ParamStore *store, Rng *rng, double scale = 0.5,
                            const std::string &pattern = "*") {
  for (auto &[name, p] : *store) {
    if (!GlobMatch(pattern, name)) continue;
    for (double &v : p.value) v = rng->Uniform(-scale, scale);
  }
}

inline Matrix RandomMatrix(int rows, int cols, Rng *rng, double scale = 1.0) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng->Uniform(-scale, scale);
  return m;
}

inline Vector RandomVector(int n, Rng *rng, double scale = 1.0) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng->Uniform(-scale, scale);
  return v;
}

/// Puts `m` into `store` as a tensor named `name`, so that finite-difference
/// checks can probe input gradients alongside parameters.
inline void StoreMatrix(ParamStore *store, const std::string &name, const Matrix &m) {
  if (!store->Contains(name)) store->Add(name, {static_cast<int>(m.rows()), static_cast<int>(m.cols())});
  auto &v = store->Get(name).value;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) v[r * m.cols() + c] = m(r, c);
}

}  // namespace testing
}  // namespace rntm

#endif  // RNTM_NNET_NNET_TEST_UTIL_H_
