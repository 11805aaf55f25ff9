// transducer/rnnt-loss-test.cc

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

#include <cmath>
#include <vector>

#include "base/rntm-common.h"
#include "doctest.h"
#include "nnet/nnet-test-util.h"
#include "nnet/rng.h"
#include "transducer/rnnt-loss.h"
#include "transducer/rnnt-oracle.h"

namespace rntm {
namespace {

using testing::Binomial;
using testing::Enumeration;
using testing::EnumeratePaths;
using testing::NaiveSoftmax;
using testing::RandomMatrix;
using testing::RandomTarget;

}  // namespace

TEST_CASE("rnnt loss: single frame, empty target") {
  Rng rng(3);
  Matrix logits = RandomMatrix(1, 5, &rng, 2.0);
  const auto sm = NaiveSoftmax(logits, 0);
  const RnntLossResult r = RnntLoss(logits, 1, {}, 2);
  CHECK(r.loss == doctest::Approx(-std::log(sm[2])).epsilon(1e-12));
}

TEST_CASE("rnnt loss: T=2, U=1 by hand") {
  Rng rng(5);
  Matrix logits = RandomMatrix(4, 3, &rng, 1.5);
  const std::vector<int> y = {1};
  auto p = [&](int t, int u, int k) { return NaiveSoftmax(logits, t * 2 + u)[k]; };
  // label at t=0 then two blanks; blank, label at t=1, blank.
  const double prob = p(0, 0, 1) * p(0, 1, 0) * p(1, 1, 0) + p(0, 0, 0) * p(1, 0, 1) * p(1, 1, 0);
  CHECK(RnntLoss(logits, 2, y, 0).loss == doctest::Approx(-std::log(prob)).epsilon(1e-12));
  const Enumeration e = EnumeratePaths(logits, 2, y, 0);
  CHECK(e.interleavings == 3);
  CHECK(e.valid_paths == 2);
}

TEST_CASE("rnnt loss: equals brute-force enumeration for T <= 4, U <= 3") {
  Rng rng(11);
  for (int T = 1; T <= 4; ++T) {
    for (int U = 0; U <= 3; ++U) {
      for (int rep = 0; rep < 5; ++rep) {
        const int V = 4 + rep % 2;
        const int blank = rep % V;
        const Matrix logits = RandomMatrix(T * (U + 1), V, &rng, 3.0);
        const auto y = RandomTarget(U, V, blank, &rng);
        const Enumeration e = EnumeratePaths(logits, T, y, blank);
        CHECK(e.interleavings == Binomial(T + U, U));
        CHECK(e.valid_paths == Binomial(T - 1 + U, U));
        const RnntLossResult r = RnntLoss(logits, T, y, blank, false);
        CHECK(std::abs(r.loss + std::log(e.prob)) < 1e-9);
        CHECK(r.loss >= 0.0);
      }
    }
  }
}

TEST_CASE("rnnt loss: forward and backward totals agree") {
  Rng rng(17);
  for (int rep = 0; rep < 40; ++rep) {
    const int T = static_cast<int>(rng.UniformInt(1, 12));
    const int U = static_cast<int>(rng.UniformInt(0, 8));
    const int V = static_cast<int>(rng.UniformInt(2, 9));
    const Matrix logits = RandomMatrix(T * (U + 1), V, &rng, 4.0);
    const auto y = RandomTarget(U, V, 0, &rng);
    const RnntLossResult r = RnntLoss(logits, T, y, 0);
    CHECK(r.lattice.alpha(0, 0) == 0.0);
    CHECK(std::abs(r.lattice.total_from_alpha - r.lattice.total_from_beta) < 1e-10);
    CHECK(r.loss == -r.lattice.total_from_alpha);
  }
}

TEST_CASE("rnnt loss: node occupancies sum to one on every anti-diagonal") {
  Rng rng(19);
  for (int rep = 0; rep < 30; ++rep) {
    const int T = static_cast<int>(rng.UniformInt(1, 8));
    const int U = static_cast<int>(rng.UniformInt(0, 6));
    const int V = static_cast<int>(rng.UniformInt(2, 6));
    const Matrix logits = RandomMatrix(T * (U + 1), V, &rng, 3.0);
    const auto y = RandomTarget(U, V, V - 1, &rng);
    const RnntLattice lat = RnntLoss(logits, T, y, V - 1, false).lattice;
    const double total = lat.total_from_alpha;
    for (int d = 0; d <= T - 1 + U; ++d) {
      double sum = 0.0;
      for (int t = 0; t < T; ++t) {
        const int u = d - t;
        if (u < 0 || u > U) continue;
        CHECK(lat.alpha(t, u) + lat.beta(t, u) <= total + 1e-9);
        sum += std::exp(lat.alpha(t, u) + lat.beta(t, u) - total);
      }
      CHECK(std::abs(sum - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("rnnt loss: logit gradients match finite differences") {
  Rng rng(23);
  for (int rep = 0; rep < 6; ++rep) {
    const int T = static_cast<int>(rng.UniformInt(1, 5));
    const int U = static_cast<int>(rng.UniformInt(0, 3));
    const int V = static_cast<int>(rng.UniformInt(2, 5));
    Matrix logits = RandomMatrix(T * (U + 1), V, &rng, 2.0);
    const auto y = RandomTarget(U, V, 0, &rng);
    const Matrix grads = RnntLoss(logits, T, y, 0).logit_grads;
    REQUIRE(grads.rows() == logits.rows());
    const double eps = 1e-5;
    for (int r = 0; r < logits.rows(); ++r) {
      for (int k = 0; k < V; ++k) {
        const double saved = logits(r, k);
        logits(r, k) = saved + eps;
        const double plus = RnntLoss(logits, T, y, 0, false).loss;
        logits(r, k) = saved - eps;
        const double minus = RnntLoss(logits, T, y, 0, false).loss;
        logits(r, k) = saved;
        const double numeric = (plus - minus) / (2 * eps);
        const double denom = std::max({std::abs(numeric), std::abs(grads(r, k)), 1e-8});
        CHECK(std::abs(numeric - grads(r, k)) / denom < 1e-4);
      }
    }
  }
}

TEST_CASE("rnnt loss: gradient rows sum to zero") {
  // Each row is softmax * occupancy - arc posteriors, and the arcs leaving a
  // node carry exactly its occupancy.
  Rng rng(29);
  const Matrix logits = RandomMatrix(5 * 4, 6, &rng, 2.0);
  const RnntLossResult r = RnntLoss(logits, 5, std::vector<int>{1, 2, 3}, 0);
  for (int i = 0; i < r.logit_grads.rows(); ++i) CHECK(std::abs(r.logit_grads.row(i).sum()) < 1e-12);
}

TEST_CASE("rnnt loss: contract errors") {
  Rng rng(31);
  const Matrix logits = RandomMatrix(6, 4, &rng);
  CHECK_THROWS_AS(RnntLoss(logits, 3, std::vector<int>{0}, 0), ContractError);
  CHECK_THROWS_AS(RnntLoss(logits, 3, std::vector<int>{4}, 0), ContractError);
  CHECK_THROWS_AS(RnntLoss(logits, 2, std::vector<int>{1}, 0), ContractError);
  CHECK_THROWS_AS(RnntLoss(logits, 0, {}, 0), ContractError);
  CHECK_THROWS_AS(RnntLoss(logits, 6, {}, 7), ContractError);
  CHECK_NOTHROW(RnntLoss(logits, 6, {}, 3));
}

}  // namespace rntm
