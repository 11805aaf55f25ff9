// nnet/layers.cc

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

#include "nnet/layers.h"

#include <cmath>
#include <utility>

#include "base/rntm-common.h"
#include "nnet/nnet-math.h"

namespace rntm {

void GlorotUniform(Param *param, Rng *rng) {
  RNTM_REQUIRE(param->shape.size() == 2, "GlorotUniform: need a rank-2 tensor");
  const double a = std::sqrt(6.0 / (param->shape[0] + param->shape[1]));
  for (double &v : param->value) v = rng->Uniform(-a, a);
}

// ---------------------------------------------------------------- Linear

Linear::Linear(std::string prefix, int in_dim, int out_dim, bool bias)
    : w_name_(prefix + ".w"), b_name_(prefix + ".b"), in_dim_(in_dim),
      out_dim_(out_dim), bias_(bias) {}

void Linear::Register(ParamStore *store) const {
  store->Add(w_name_, {out_dim_, in_dim_});
  if (bias_) store->Add(b_name_, {out_dim_});
}

void Linear::Init(ParamStore *store, Rng *rng) const {
  GlorotUniform(&store->Get(w_name_), rng);
  if (bias_) {
    auto &b = store->Get(b_name_).value;
    std::fill(b.begin(), b.end(), 0.0);
  }
}

Vector Linear::Forward(const ParamStore &params, const Vector &x) const {
  RNTM_REQUIRE(x.size() == in_dim_, w_name_ << ": input width " << x.size()
                                             << " != " << in_dim_);
  Vector y = params.Mat(w_name_) * x;
  if (bias_) y += params.Vec(b_name_);
  return y;
}

Matrix Linear::ForwardRows(const ParamStore &params, const Matrix &x) const {
  RNTM_REQUIRE(x.cols() == in_dim_, w_name_ << ": input width " << x.cols()
                                             << " != " << in_dim_);
  Matrix y = x * params.Mat(w_name_).transpose();
  if (bias_) y.rowwise() += params.Vec(b_name_).transpose();
  return y;
}

Matrix Linear::BackwardRows(const ParamStore &params, const Matrix &x, const Matrix &dy,
                            ParamStore *grads) const {
  RNTM_REQUIRE(dy.cols() == out_dim_ && dy.rows() == x.rows(),
               w_name_ << ": output gradient has wrong shape");
  if (grads != nullptr && !grads->Get(w_name_).frozen) {
    grads->GradMat(w_name_).noalias() += dy.transpose() * x;
    if (bias_) grads->GradVec(b_name_) += dy.colwise().sum().transpose();
  }
  return dy * params.Mat(w_name_);
}

// ---------------------------------------------------------------- Lstm

Lstm::Lstm(std::string prefix, int in_dim, int hidden_dim)
    : wx_name_(prefix + ".w_x"), wh_name_(prefix + ".w_h"), b_name_(prefix + ".b"),
      in_dim_(in_dim), hidden_(hidden_dim) {}

void Lstm::Register(ParamStore *store) const {
  store->Add(wx_name_, {4 * hidden_, in_dim_});
  store->Add(wh_name_, {4 * hidden_, hidden_});
  store->Add(b_name_, {4 * hidden_});
}

void Lstm::Init(ParamStore *store, Rng *rng) const {
  GlorotUniform(&store->Get(wx_name_), rng);
  GlorotUniform(&store->Get(wh_name_), rng);
  auto &b = store->Get(b_name_).value;
  std::fill(b.begin(), b.end(), 0.0);
  for (int k = hidden_; k < 2 * hidden_; ++k) b[k] = 1.0;
}

LstmState Lstm::ZeroState() const {
  return {Vector::Zero(hidden_), Vector::Zero(hidden_)};
}

namespace {

// Applies the gate nonlinearities in place to a 4H pre-activation block.
template <typename Block>
void ActivateGates(Block &&z, int hidden) {
  for (int k = 0; k < 4 * hidden; ++k) {
    const bool candidate = k >= 2 * hidden && k < 3 * hidden;
    z[k] = candidate ? std::tanh(z[k]) : Sigmoid(z[k]);
  }
}

}  // namespace

LstmState Lstm::Step(const ParamStore &params, const Vector &x, const LstmState &prev,
                     LstmStepCache *cache) const {
  RNTM_REQUIRE(x.size() == in_dim_, wx_name_ << ": input width " << x.size()
                                              << " != " << in_dim_);
  RNTM_REQUIRE(prev.h.size() == hidden_ && prev.c.size() == hidden_,
               wx_name_ << ": state width != " << hidden_);
  const int H = hidden_;
  Vector z = params.Mat(wx_name_) * x + params.Mat(wh_name_) * prev.h + params.Vec(b_name_);
  ActivateGates(z, H);
  LstmState next;
  next.c = z.segment(H, H).cwiseProduct(prev.c) + z.segment(0, H).cwiseProduct(z.segment(2 * H, H));
  Vector tanh_c = next.c.array().tanh();
  next.h = z.segment(3 * H, H).cwiseProduct(tanh_c);
  if (cache != nullptr) {
    cache->x = x;
    cache->h_prev = prev.h;
    cache->c_prev = prev.c;
    cache->i = z.segment(0, H);
    cache->f = z.segment(H, H);
    cache->g = z.segment(2 * H, H);
    cache->o = z.segment(3 * H, H);
    cache->c = next.c;
    cache->tanh_c = std::move(tanh_c);
  }
  return next;
}

void Lstm::StepBackward(const ParamStore &params, const LstmStepCache &cache,
                        const Vector &dh, const Vector &dc_in, ParamStore *grads,
                        Vector *dx, Vector *dh_prev, Vector *dc_prev) const {
  const int H = hidden_;
  Vector dgates(4 * H);
  Vector dc = dc_in.array() + dh.array() * cache.o.array() *
                                  (1.0 - cache.tanh_c.array().square());
  dgates.segment(0, H) = (dc.array() * cache.g.array() * cache.i.array() * (1.0 - cache.i.array())).matrix();
  dgates.segment(H, H) = (dc.array() * cache.c_prev.array() * cache.f.array() * (1.0 - cache.f.array())).matrix();
  dgates.segment(2 * H, H) = (dc.array() * cache.i.array() * (1.0 - cache.g.array().square())).matrix();
  dgates.segment(3 * H, H) = (dh.array() * cache.tanh_c.array() * cache.o.array() * (1.0 - cache.o.array())).matrix();
  if (grads != nullptr && !grads->Get(wx_name_).frozen) {
    grads->GradMat(wx_name_).noalias() += dgates * cache.x.transpose();
    grads->GradMat(wh_name_).noalias() += dgates * cache.h_prev.transpose();
    grads->GradVec(b_name_) += dgates;
  }
  *dx = params.Mat(wx_name_).transpose() * dgates;
  *dh_prev = params.Mat(wh_name_).transpose() * dgates;
  *dc_prev = dc.cwiseProduct(cache.f);
}

Matrix Lstm::Forward(const ParamStore &params, const Matrix &x, bool reverse,
                     SeqCache *cache) const {
  RNTM_REQUIRE(x.rows() >= 1, wx_name_ << ": empty sequence");
  RNTM_REQUIRE(x.cols() == in_dim_, wx_name_ << ": input width " << x.cols()
                                              << " != " << in_dim_);
  const int T = static_cast<int>(x.rows());
  const int H = hidden_;
  // Input contributions for all frames at once; the recurrence adds U h.
  Matrix gates = x * params.Mat(wx_name_).transpose();
  gates.rowwise() += params.Vec(b_name_).transpose();
  const auto w_h = params.Mat(wh_name_);
  Matrix h_out(T, H), c_out(T, H);
  Vector h = Vector::Zero(H), c = Vector::Zero(H);
  for (int step = 0; step < T; ++step) {
    const int t = reverse ? T - 1 - step : step;
    auto z = gates.row(t);
    z.noalias() += (w_h * h).transpose();
    ActivateGates(z, H);
    c = z.segment(H, H).transpose().cwiseProduct(c) +
        z.segment(0, H).transpose().cwiseProduct(z.segment(2 * H, H).transpose());
    h = z.segment(3 * H, H).transpose().cwiseProduct(Vector(c.array().tanh()));
    h_out.row(t) = h.transpose();
    c_out.row(t) = c.transpose();
  }
  if (cache != nullptr) {
    cache->x = x;
    cache->gates = std::move(gates);
    cache->c = std::move(c_out);
    cache->h = h_out;
    cache->reverse = reverse;
  }
  return h_out;
}

Matrix Lstm::Backward(const ParamStore &params, const SeqCache &cache, const Matrix &d_out,
                      ParamStore *grads) const {
  const int T = static_cast<int>(cache.x.rows());
  const int H = hidden_;
  RNTM_REQUIRE(d_out.rows() == T && d_out.cols() == H, wx_name_ << ": bad output gradient");
  const auto w_h = params.Mat(wh_name_);
  Matrix dgates(T, 4 * H);
  Matrix h_prev = Matrix::Zero(T, H);
  Vector dh_carry = Vector::Zero(H), dc_carry = Vector::Zero(H);
  // Walk the frames in the opposite order to the forward pass.
  for (int step = T - 1; step >= 0; --step) {
    const int t = cache.reverse ? T - 1 - step : step;
    const int t_prev = cache.reverse ? t + 1 : t - 1;
    const bool first = step == 0;
    const auto g = cache.gates.row(t);
    Vector i = g.segment(0, H).transpose(), f = g.segment(H, H).transpose();
    Vector cand = g.segment(2 * H, H).transpose(), o = g.segment(3 * H, H).transpose();
    Vector c_prev = first ? Vector::Zero(H) : Vector(cache.c.row(t_prev).transpose());
    if (!first) h_prev.row(t) = cache.h.row(t_prev);
    Vector tanh_c = cache.c.row(t).transpose().array().tanh();
    Vector dh = d_out.row(t).transpose() + dh_carry;
    Vector dc = dc_carry.array() + dh.array() * o.array() * (1.0 - tanh_c.array().square());
    auto dz = dgates.row(t);
    dz.segment(0, H) = (dc.array() * cand.array() * i.array() * (1.0 - i.array())).matrix().transpose();
    dz.segment(H, H) = (dc.array() * c_prev.array() * f.array() * (1.0 - f.array())).matrix().transpose();
    dz.segment(2 * H, H) = (dc.array() * i.array() * (1.0 - cand.array().square())).matrix().transpose();
    dz.segment(3 * H, H) = (dh.array() * tanh_c.array() * o.array() * (1.0 - o.array())).matrix().transpose();
    dh_carry.noalias() = w_h.transpose() * dz.transpose();
    dc_carry = dc.cwiseProduct(f);
  }
  if (grads != nullptr && !grads->Get(wx_name_).frozen) {
    grads->GradMat(wx_name_).noalias() += dgates.transpose() * cache.x;
    grads->GradMat(wh_name_).noalias() += dgates.transpose() * h_prev;
    grads->GradVec(b_name_) += dgates.colwise().sum().transpose();
  }
  return dgates * params.Mat(wx_name_);
}

// ---------------------------------------------------------------- BiLstm

BiLstm::BiLstm(const std::string &prefix, int in_dim, int hidden_dim)
    : fwd_(prefix + ".fwd", in_dim, hidden_dim), bwd_(prefix + ".bwd", in_dim, hidden_dim) {}

void BiLstm::Register(ParamStore *store) const {
  fwd_.Register(store);
  bwd_.Register(store);
}

void BiLstm::Init(ParamStore *store, Rng *rng) const {
  fwd_.Init(store, rng);
  bwd_.Init(store, rng);
}

Matrix BiLstm::Forward(const ParamStore &params, const Matrix &x, Cache *cache) const {
  const int H = fwd_.HiddenDim();
  Matrix out(x.rows(), 2 * H);
  out.leftCols(H) = fwd_.Forward(params, x, false, cache ? &cache->fwd : nullptr);
  out.rightCols(H) = bwd_.Forward(params, x, true, cache ? &cache->bwd : nullptr);
  return out;
}

SequenceTensor BiLstm::Forward(const ParamStore &params, const SequenceTensor &seq) const {
  return SequenceTensor(Forward(params, seq.frames()));
}

Matrix BiLstm::Backward(const ParamStore &params, const Cache &cache, const Matrix &d_out,
                        ParamStore *grads) const {
  const int H = fwd_.HiddenDim();
  RNTM_REQUIRE(d_out.cols() == 2 * H, "BiLstm: output gradient width mismatch");
  Matrix dx = fwd_.Backward(params, cache.fwd, d_out.leftCols(H), grads);
  dx += bwd_.Backward(params, cache.bwd, d_out.rightCols(H), grads);
  return dx;
}

}  // namespace rntm
