// transducer/rnnt-loss.cc

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

#include "transducer/rnnt-loss.h"

#include <cmath>

#include "base/rntm-common.h"
#include "nnet/nnet-math.h"

namespace rntm {

RnntLossResult RnntLoss(const Matrix &logits, int num_frames, std::span<const int> target,
                        int blank_id, bool want_grads) {
  const int T = num_frames;
  const int U = static_cast<int>(target.size());
  const int V = static_cast<int>(logits.cols());
  RNTM_REQUIRE(T >= 1, "RnntLoss: need at least one frame");
  RNTM_REQUIRE(logits.rows() == static_cast<Eigen::Index>(T) * (U + 1),
               "RnntLoss: logits have " << logits.rows() << " rows, expected "
                                        << T * (U + 1));
  RNTM_REQUIRE(blank_id >= 0 && blank_id < V, "RnntLoss: blank id out of range");
  for (int y : target) {
    RNTM_REQUIRE(y != blank_id, "RnntLoss: target contains the blank symbol");
    RNTM_REQUIRE(y >= 0 && y < V, "RnntLoss: target id " << y << " out of range");
  }

  // Per-node log-normalizers; only the blank and next-label entries of each
  // node's distribution take part in the recursions.
  auto row = [U](int t, int u) { return static_cast<Eigen::Index>(t) * (U + 1) + u; };
  Matrix log_blank(T, U + 1), log_label(T, U + 1);
  Vector lse(logits.rows());
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      const auto r = logits.row(row(t, u));
      lse[row(t, u)] = LogSumExp(std::span<const double>(r.data(), r.size()));
      log_blank(t, u) = r[blank_id] - lse[row(t, u)];
      log_label(t, u) = u < U ? r[target[u]] - lse[row(t, u)] : kLogZero;
    }
  }

  RnntLossResult res;
  RnntLattice &lat = res.lattice;
  lat.num_frames = T;
  lat.num_labels = U;
  lat.alpha = Matrix::Constant(T, U + 1, kLogZero);
  lat.beta = Matrix::Constant(T, U + 1, kLogZero);

  lat.alpha(0, 0) = 0.0;
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      if (t == 0 && u == 0) continue;
      double a = kLogZero;
      if (t > 0) a = lat.alpha(t - 1, u) + log_blank(t - 1, u);
      if (u > 0) a = LogAdd(a, lat.alpha(t, u - 1) + log_label(t, u - 1));
      lat.alpha(t, u) = a;
    }
  }
  lat.total_from_alpha = lat.alpha(T - 1, U) + log_blank(T - 1, U);

  lat.beta(T - 1, U) = log_blank(T - 1, U);
  for (int t = T - 1; t >= 0; --t) {
    for (int u = U; u >= 0; --u) {
      if (t == T - 1 && u == U) continue;
      double b = kLogZero;
      if (t < T - 1) b = lat.beta(t + 1, u) + log_blank(t, u);
      if (u < U) b = LogAdd(b, lat.beta(t, u + 1) + log_label(t, u));
      lat.beta(t, u) = b;
    }
  }
  lat.total_from_beta = lat.beta(0, 0);
  res.loss = -lat.total_from_alpha;

  if (!want_grads) return res;
  // d loss / d log p(k | t, u) is minus the posterior of taking that arc;
  // through the log-softmax this becomes softmax * occupancy - arc posterior.
  const double total = lat.total_from_alpha;
  res.logit_grads.resize(logits.rows(), V);
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      const Eigen::Index r = row(t, u);
      const double occupancy = std::exp(lat.alpha(t, u) + lat.beta(t, u) - total);
      auto g = res.logit_grads.row(r);
      g = (logits.row(r).array() - lse[r]).exp() * occupancy;
      const double next_beta = t < T - 1 ? lat.beta(t + 1, u) : (u == U ? 0.0 : kLogZero);
      if (next_beta != kLogZero)
        g[blank_id] -= std::exp(lat.alpha(t, u) + log_blank(t, u) + next_beta - total);
      if (u < U)
        g[target[u]] -= std::exp(lat.alpha(t, u) + log_label(t, u) + lat.beta(t, u + 1) - total);
    }
  }
  return res;
}

}  // namespace rntm
