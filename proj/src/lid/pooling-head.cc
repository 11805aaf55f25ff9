// lid/pooling-head.cc

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

#include "lid/pooling-head.h"

#include <cmath>

#include "base/rntm-common.h"
#include "nnet/nnet-math.h"

namespace rntm {

PoolingHead::PoolingHead(const std::string &prefix, int in_dim, int num_heads, int head_dim)
    : pr1_(prefix + ".pr1", in_dim, num_heads),
      pr2_(prefix + ".pr2", num_heads, num_heads),
      pr3_(prefix + ".pr3", in_dim, num_heads * head_dim),
      heads_(num_heads),
      head_dim_(head_dim) {
  RNTM_REQUIRE(in_dim >= 1 && num_heads >= 1 && head_dim >= 1,
               prefix << ": pooling needs positive input width, head count and head width");
}

void PoolingHead::Register(ParamStore *store) const {
  pr1_.Register(store);
  pr2_.Register(store);
  pr3_.Register(store);
}

void PoolingHead::Init(ParamStore *store, Rng *rng) const {
  pr1_.Init(store, rng);
  pr2_.Init(store, rng);
  pr3_.Init(store, rng);
}

Vector PoolingHead::Forward(const ParamStore &params, const Matrix &x, Cache *cache) const {
  RNTM_REQUIRE(x.rows() >= 1, "pooling: empty sequence");
  Cache local;
  Cache &c = cache != nullptr ? *cache : local;
  c.x = x;
  c.a1 = pr1_.ForwardRows(params, x);
  c.s = c.a1.unaryExpr([](double v) { return LogSigmoid(v); });
  const Matrix w = pr2_.ForwardRows(params, c.s);
  c.z = pr3_.ForwardRows(params, x);
  c.r = c.z.cwiseMax(0.0);

  const int T = static_cast<int>(x.rows());
  c.alpha.resize(T, heads_);
  Vector y = Vector::Zero(OutputDim());
  for (int h = 0; h < heads_; ++h) {
    const double top = w.col(h).maxCoeff();
    double norm = 0.0;
    for (int t = 0; t < T; ++t) norm += (c.alpha(t, h) = std::exp(w(t, h) - top));
    c.alpha.col(h) /= norm;
    for (int t = 0; t < T; ++t)
      y.segment(h * head_dim_, head_dim_) +=
          c.alpha(t, h) * c.r.row(t).segment(h * head_dim_, head_dim_).transpose();
  }
  return y;
}

Matrix PoolingHead::Backward(const ParamStore &params, const Cache &c, const Vector &dy,
                             ParamStore *grads) const {
  RNTM_REQUIRE(dy.size() == OutputDim(), "pooling: output gradient has wrong width");
  const int T = static_cast<int>(c.x.rows());
  Matrix dr(T, OutputDim()), dw(T, heads_);
  for (int h = 0; h < heads_; ++h) {
    const auto g = dy.segment(h * head_dim_, head_dim_);
    // d y_h / d w_t[h] = alpha_t (r_t - y_h), taken along g.
    double mean = 0.0;
    for (int t = 0; t < T; ++t) {
      const double dot = c.r.row(t).segment(h * head_dim_, head_dim_).dot(g.transpose());
      dw(t, h) = dot;
      mean += c.alpha(t, h) * dot;
    }
    for (int t = 0; t < T; ++t) {
      dw(t, h) = c.alpha(t, h) * (dw(t, h) - mean);
      dr.row(t).segment(h * head_dim_, head_dim_) = c.alpha(t, h) * g.transpose();
    }
  }
  const Matrix dz = dr.cwiseProduct((c.z.array() > 0.0).cast<double>().matrix());
  const Matrix ds = pr2_.BackwardRows(params, c.s, dw, grads);
  // d logsigmoid(a) / da = sigmoid(-a).
  const Matrix da1 = ds.cwiseProduct(c.a1.unaryExpr([](double v) { return Sigmoid(-v); }));
  Matrix dx = pr3_.BackwardRows(params, c.x, dz, grads);
  dx += pr1_.BackwardRows(params, c.x, da1, grads);
  return dx;
}

}  // namespace rntm
