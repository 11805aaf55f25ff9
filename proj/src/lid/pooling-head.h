// lid/pooling-head.h

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

#ifndef RNTM_LID_POOLING_HEAD_H_
#define RNTM_LID_POOLING_HEAD_H_

#include <string>

#include "nnet/layers.h"
#include "nnet/matrix.h"
#include "nnet/param-store.h"

namespace rntm {

/// Multi-head weighted-average pooling over frames x_1..x_T:
///
///   w_t = Pr2(logsigmoid(Pr1 x_t))                  one weight per head
///   y_h = sum_t exp(w_t[h]) ReLU(Pr3 x_t)_h / sum_t exp(w_t[h])
///
/// where ReLU(Pr3 x_t)_h is the h-th contiguous block of width head_dim.
/// Parameters live under "<prefix>.pr1", "<prefix>.pr2", "<prefix>.pr3".
class PoolingHead {
 public:
  PoolingHead() = default;
  PoolingHead(const std::string &prefix, int in_dim, int num_heads, int head_dim);

  void Register(ParamStore *store) const;
  void Init(ParamStore *store, Rng *rng) const;

  int InputDim() const { return pr1_.InputDim(); }
  int NumHeads() const { return heads_; }
  int HeadDim() const { return head_dim_; }
  int OutputDim() const { return heads_ * head_dim_; }
  const Linear &pr1() const { return pr1_; }
  const Linear &pr2() const { return pr2_; }
  const Linear &pr3() const { return pr3_; }

  struct Cache {
    Matrix x;      // T x in
    Matrix a1;     // Pr1 x, T x H
    Matrix s;      // logsigmoid(a1)
    Matrix alpha;  // per-head softmax over time of w, T x H
    Matrix z;      // Pr3 x, T x (H * head_dim)
    Matrix r;      // ReLU(z)
  };
  Vector Forward(const ParamStore &params, const Matrix &x, Cache *cache = nullptr) const;
  /// Accumulates parameter gradients for d loss / d y and returns
  /// d loss / d x (T x in).
  Matrix Backward(const ParamStore &params, const Cache &cache, const Vector &dy,
                  ParamStore *grads) const;

 private:
  Linear pr1_, pr2_, pr3_;
  int heads_ = 0, head_dim_ = 0;
};

}  // namespace rntm

#endif  // RNTM_LID_POOLING_HEAD_H_
