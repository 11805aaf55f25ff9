// lid/pooling-oracle.h

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

// Scalar re-evaluation of the pooling formula and randomized property
// checks, shared by the unit tests and the acceptance suite. Not linked into
// any library.

#ifndef RNTM_LID_POOLING_ORACLE_H_
#define RNTM_LID_POOLING_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lid/pooling-head.h"
#include "nnet/nnet-test-util.h"
#include "nnet/rng.h"

namespace rntm {
namespace testing {

/// Plain loops over the raw tensors, no Eigen and no max shift.
inline std::vector<double> DirectPool(const ParamStore &p, const PoolingHead &head,
                                      const Matrix &x) {
  const int T = static_cast<int>(x.rows()), D = static_cast<int>(x.cols());
  const int H = head.NumHeads(), K = head.HeadDim();
  auto affine = [&](const Linear &l, const std::vector<double> &in) {
    const auto &w = p.Get(l.WeightName()).value;
    const auto &b = p.Get(l.BiasName()).value;
    std::vector<double> out(l.OutputDim());
    for (int o = 0; o < l.OutputDim(); ++o) {
      double acc = b[o];
      for (int i = 0; i < l.InputDim(); ++i) acc += w[o * l.InputDim() + i] * in[i];
      out[o] = acc;
    }
    return out;
  };
  std::vector<double> num(H * K, 0.0), den(H, 0.0);
  for (int t = 0; t < T; ++t) {
    std::vector<double> xt(D);
    for (int j = 0; j < D; ++j) xt[j] = x(t, j);
    std::vector<double> a = affine(head.pr1(), xt);
    for (double &v : a) v = std::log(1.0 / (1.0 + std::exp(-v)));
    const std::vector<double> w = affine(head.pr2(), a);
    const std::vector<double> z = affine(head.pr3(), xt);
    for (int h = 0; h < H; ++h) {
      const double e = std::exp(w[h]);
      den[h] += e;
      for (int k = 0; k < K; ++k) num[h * K + k] += e * std::max(0.0, z[h * K + k]);
    }
  }
  for (int h = 0; h < H; ++h)
    for (int k = 0; k < K; ++k) num[h * K + k] /= den[h];
  return num;
}

inline double MaxAbsDiff(const Vector &a, const Vector &b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Largest deviation seen by each pooling property over `trials` random
/// heads and inputs.
struct PoolingPropertyReport {
  double permutation = 0.0;  // |pool(P x) - pool(x)|
  double shift = 0.0;        // |pool with w[h] + c - pool(x)|
  double min_output = 0.0;   // smallest entry of y
  double single_frame = 0.0; // |pool(x_1) - ReLU(Pr3 x_1)|
  double uniform = 0.0;      // |pool with Pr1 = Pr2 = 0 - mean ReLU(Pr3 x)|
  int trials = 0;
};

inline PoolingPropertyReport CheckPoolingProperties(int trials, uint64_t seed) {
  PoolingPropertyReport rep;
  rep.min_output = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (int n = 0; n < trials; ++n) {
    const int D = static_cast<int>(rng.UniformInt(1, 6)), H = static_cast<int>(rng.UniformInt(1, 4));
    const int K = static_cast<int>(rng.UniformInt(1, 4)), T = static_cast<int>(rng.UniformInt(1, 8));
    PoolingHead head("pool", D, H, K);
    ParamStore p;
    head.Register(&p);
    RandomizeParams(&p, &rng, 1.5);
    const Matrix x = RandomMatrix(T, D, &rng, 2.0);
    const Vector y = head.Forward(p, x);

    // Frame permutation: weights travel with their frames.
    std::vector<int> perm(T);
    for (int t = 0; t < T; ++t) perm[t] = t;
    rng.Shuffle(&perm);
    Matrix xp(T, D);
    for (int t = 0; t < T; ++t) xp.row(t) = x.row(perm[t]);
    rep.permutation = std::max(rep.permutation, MaxAbsDiff(head.Forward(p, xp), y));

    // A constant added to one head's weight at every frame, via Pr2's bias.
    {
      ParamStore q = p;
      const int h = static_cast<int>(rng.UniformInt(0, H - 1));
      q.Get(head.pr2().BiasName()).value[h] += rng.Uniform(-10.0, 10.0);
      rep.shift = std::max(rep.shift, MaxAbsDiff(head.Forward(q, x), y));
    }

    rep.min_output = std::min(rep.min_output, y.minCoeff());

    {
      const Matrix x1 = x.topRows(1);
      const Vector expect = head.pr3().Forward(p, x1.row(0).transpose()).cwiseMax(0.0);
      rep.single_frame = std::max(rep.single_frame, MaxAbsDiff(head.Forward(p, x1), expect));
    }

    {
      ParamStore q = p;
      for (const Linear *l : {&head.pr1(), &head.pr2()}) {
        for (double &v : q.Get(l->WeightName()).value) v = 0.0;
        for (double &v : q.Get(l->BiasName()).value) v = 0.0;
      }
      const Vector mean = head.pr3().ForwardRows(q, x).cwiseMax(0.0).colwise().mean().transpose();
      rep.uniform = std::max(rep.uniform, MaxAbsDiff(head.Forward(q, x), mean));
    }
    ++rep.trials;
  }
  return rep;
}

}  // namespace testing
}  // namespace rntm

#endif  // RNTM_LID_POOLING_ORACLE_H_
