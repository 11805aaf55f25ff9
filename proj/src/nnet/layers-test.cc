// nnet/layers-test.cc

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

#include "base/rntm-common.h"
#include "doctest.h"
#include "nnet/grad-check.h"
#include "nnet/layers.h"
#include "nnet/nnet-test-util.h"

namespace rntm {

using testing::RandomizeParams;
using testing::RandomMatrix;
using testing::RandomVector;
using testing::StoreMatrix;

TEST_CASE("lstm step: zero parameters") {
  Lstm cell("cell", 3, 2);
  ParamStore p;
  cell.Register(&p);
  LstmState s = cell.Step(p, Vector::Zero(3), cell.ZeroState());
  CHECK(s.h.isZero(0.0));
  CHECK(s.c.isZero(0.0));
}

TEST_CASE("lstm step: sigmoid(0) forces the scalar cell values") {
  Lstm cell("cell", 1, 1);
  ParamStore p;
  cell.Register(&p);
  LstmState prev{Vector::Zero(1), Vector::Ones(1)};
  LstmState s = cell.Step(p, Vector::Zero(1), prev);
  CHECK(s.c[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.h[0] == doctest::Approx(0.5 * std::tanh(0.5)).epsilon(1e-15));
  CHECK(s.h[0] == doctest::Approx(0.231).epsilon(1e-3));
}

TEST_CASE("lstm step: dimension mismatch is a contract error") {
  Lstm cell("cell", 3, 2);
  ParamStore p;
  cell.Register(&p);
  CHECK_THROWS_AS(cell.Step(p, Vector::Zero(4), cell.ZeroState()), ContractError);
  CHECK_THROWS_AS(cell.Step(p, Vector::Zero(3), LstmState{Vector::Zero(3), Vector::Zero(2)}),
                  ContractError);
  CHECK_THROWS_AS(cell.Forward(p, Matrix::Zero(2, 5), false), ContractError);
}

TEST_CASE("init: glorot range and forget bias") {
  Lstm cell("cell", 4, 3);
  ParamStore p;
  cell.Register(&p);
  Rng rng(1);
  cell.Init(&p, &rng);
  const double a = std::sqrt(6.0 / (12 + 4));
  for (double v : p.Get("cell.w_x").value) CHECK(std::abs(v) <= a);
  const auto &b = p.Get("cell.b").value;
  for (int k = 0; k < 12; ++k) CHECK(b[k] == (k >= 3 && k < 6 ? 1.0 : 0.0));

  ParamStore q;
  cell.Register(&q);
  Rng rng2(1);
  cell.Init(&q, &rng2);
  CHECK(q.Checksum() == p.Checksum());
}

TEST_CASE("lstm step backward matches finite differences") {
  Rng rng(11);
  Lstm cell("cell", 3, 4);
  ParamStore p;
  cell.Register(&p);
  RandomizeParams(&p, &rng);
  StoreMatrix(&p, "x", RandomMatrix(1, 3, &rng));
  StoreMatrix(&p, "h0", RandomMatrix(1, 4, &rng));
  StoreMatrix(&p, "c0", RandomMatrix(1, 4, &rng));
  const Vector rh = RandomVector(4, &rng), rc = RandomVector(4, &rng);

  auto loss = [&](const ParamStore &s) {
    LstmState prev{s.Vec("h0"), s.Vec("c0")};
    LstmState next = cell.Step(s, s.Vec("x"), prev);
    return rh.dot(next.h) + rc.dot(next.c);
  };
  LstmStepCache cache;
  cell.Step(p, p.Vec("x"), LstmState{p.Vec("h0"), p.Vec("c0")}, &cache);
  Vector dx, dh, dc;
  cell.StepBackward(p, cache, rh, rc, &p, &dx, &dh, &dc);
  p.GradVec("x") = dx;
  p.GradVec("h0") = dh;
  p.GradVec("c0") = dc;
  GradCheckOptions opts;
  opts.max_coords = 0;
  auto res = FiniteDiffCheck(loss, &p, opts);
  CHECK(res.ok);
  CHECK(res.max_rel_error < 1e-4);
}

TEST_CASE("lstm sequence forward equals repeated steps") {
  Rng rng(12);
  Lstm cell("cell", 3, 5);
  ParamStore p;
  cell.Register(&p);
  RandomizeParams(&p, &rng);
  const Matrix x = RandomMatrix(6, 3, &rng);
  for (bool reverse : {false, true}) {
    Matrix out = cell.Forward(p, x, reverse);
    LstmState s = cell.ZeroState();
    for (int k = 0; k < 6; ++k) {
      int t = reverse ? 5 - k : k;
      s = cell.Step(p, x.row(t).transpose(), s);
      CHECK((out.row(t).transpose() - s.h).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("linear and lstm sequence gradients match finite differences") {
  Rng rng(13);
  for (bool reverse : {false, true}) {
    Lstm cell("cell", 3, 4);
    Linear proj("proj", 4, 2);
    ParamStore p;
    cell.Register(&p);
    proj.Register(&p);
    RandomizeParams(&p, &rng);
    StoreMatrix(&p, "x", RandomMatrix(5, 3, &rng));
    const Matrix r = RandomMatrix(5, 2, &rng);
    auto loss = [&](const ParamStore &s) {
      Matrix x = s.Mat("x");
      return (proj.ForwardRows(s, cell.Forward(s, x, reverse)).array() * r.array()).sum();
    };
    Lstm::SeqCache cache;
    Matrix x = p.Mat("x");
    Matrix h = cell.Forward(p, x, reverse, &cache);
    p.ZeroGrad();
    Matrix dh = proj.BackwardRows(p, h, r, &p);
    p.GradMat("x") = cell.Backward(p, cache, dh, &p);
    GradCheckOptions opts;
    opts.max_coords = 0;
    auto res = FiniteDiffCheck(loss, &p, opts);
    CHECK(res.ok);
    CHECK(res.max_rel_error < 1e-4);
  }
}

TEST_CASE("frozen tensors receive no gradient") {
  Rng rng(14);
  Linear proj("proj", 3, 2);
  ParamStore p;
  proj.Register(&p);
  RandomizeParams(&p, &rng);
  p.SetFrozen("proj.*", true);
  proj.BackwardRows(p, RandomMatrix(4, 3, &rng), RandomMatrix(4, 2, &rng), &p);
  CHECK(p.GradNormSquared() == 0.0);
  for (double g : p.Get("proj.w").grad) CHECK(g == 0.0);
}

TEST_CASE("bilstm: zero params give zero output of width 2H") {
  BiLstm bi("bi", 3, 4);
  ParamStore p;
  bi.Register(&p);
  Rng rng(15);
  SequenceTensor seq(RandomMatrix(5, 3, &rng));
  SequenceTensor out = bi.Forward(p, seq);
  CHECK(out.Dim() == 8);
  CHECK(out.NumFrames() == 5);
  CHECK(out.frames().isZero(0.0));
}

TEST_CASE("bilstm: agrees with two independent unidirectional step runs") {
  Rng rng(16);
  BiLstm bi("bi", 3, 4);
  ParamStore p;
  bi.Register(&p);
  RandomizeParams(&p, &rng);
  const Matrix x = RandomMatrix(3, 3, &rng);
  const Matrix out = bi.Forward(p, x);
  LstmState f = bi.forward_lstm().ZeroState(), b = bi.backward_lstm().ZeroState();
  Matrix expected(3, 8);
  for (int t = 0; t < 3; ++t) {
    f = bi.forward_lstm().Step(p, x.row(t).transpose(), f);
    expected.row(t).head(4) = f.h.transpose();
  }
  for (int t = 2; t >= 0; --t) {
    b = bi.backward_lstm().Step(p, x.row(t).transpose(), b);
    expected.row(t).tail(4) = b.h.transpose();
  }
  CHECK((out - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("bilstm: time reversal swaps halves") {
  Rng rng(17);
  for (int T = 1; T <= 5; ++T) {
    for (int trial = 0; trial < 20; ++trial) {
      BiLstm bi("bi", 3, 4);
      ParamStore p;
      bi.Register(&p);
      RandomizeParams(&p, &rng);
      // Mirror image: the same network with the two directions' weights
      // exchanged.
      ParamStore swapped = p;
      for (const char *t : {".w_x", ".w_h", ".b"}) {
        swapped.Get(std::string("bi.fwd") + t).value = p.Get(std::string("bi.bwd") + t).value;
        swapped.Get(std::string("bi.bwd") + t).value = p.Get(std::string("bi.fwd") + t).value;
      }
      const Matrix x = RandomMatrix(T, 3, &rng);
      const Matrix xr = x.colwise().reverse();
      const Matrix out = bi.Forward(p, x);
      const Matrix out_r = bi.Forward(swapped, xr);
      for (int t = 0; t < T; ++t) {
        CHECK((out_r.row(T - 1 - t).head(4) - out.row(t).tail(4)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((out_r.row(T - 1 - t).tail(4) - out.row(t).head(4)).cwiseAbs().maxCoeff() < 1e-12);
      }
      // With tied directions the network itself is reversal-symmetric.
      ParamStore tied = p;
      for (const char *t : {".w_x", ".w_h", ".b"})
        tied.Get(std::string("bi.bwd") + t).value = p.Get(std::string("bi.fwd") + t).value;
      const Matrix a = bi.Forward(tied, x), b = bi.Forward(tied, xr);
      for (int t = 0; t < T; ++t) {
        CHECK((b.row(T - 1 - t).head(4) - a.row(t).tail(4)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((b.row(T - 1 - t).tail(4) - a.row(t).head(4)).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("bilstm gradients match finite differences") {
  Rng rng(18);
  BiLstm bi("bi", 3, 4);
  ParamStore p;
  bi.Register(&p);
  RandomizeParams(&p, &rng);
  StoreMatrix(&p, "x", RandomMatrix(4, 3, &rng));
  const Matrix r = RandomMatrix(4, 8, &rng);
  auto loss = [&](const ParamStore &s) {
    Matrix x = s.Mat("x");
    return (bi.Forward(s, x).array() * r.array()).sum();
  };
  BiLstm::Cache cache;
  Matrix x = p.Mat("x");
  bi.Forward(p, x, &cache);
  p.GradMat("x") = bi.Backward(p, cache, r, &p);
  GradCheckOptions opts;
  opts.max_coords = 0;
  auto res = FiniteDiffCheck(loss, &p, opts);
  CHECK(res.ok);
  CHECK(res.max_rel_error < 1e-4);
}

}  // namespace rntm
