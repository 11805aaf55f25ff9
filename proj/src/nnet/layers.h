// nnet/layers.h

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

#ifndef RNTM_NNET_LAYERS_H_
#define RNTM_NNET_LAYERS_H_

#include <string>

#include "nnet/matrix.h"
#include "nnet/param-store.h"
#include "nnet/rng.h"

namespace rntm {

// Layers are stateless descriptors: they know the names and sizes of their
// tensors, and read values from / write gradients to a ParamStore passed in
// by the caller. Backward() accumulates (+=) into the gradient buffers of
// `grads`, skipping tensors flagged frozen there; `grads` may be the same
// store as `params`.

/// Uniform(-a, a), a = sqrt(6 / (fan_in + fan_out)), for a rank-2 tensor
/// of shape [fan_out, fan_in].
void GlorotUniform(Param *param, Rng *rng);

/// y = W x + b, W of shape [out, in].
class Linear {
 public:
  Linear() = default;
  Linear(std::string prefix, int in_dim, int out_dim, bool bias = true);

  void Register(ParamStore *store) const;
  void Init(ParamStore *store, Rng *rng) const;

  int InputDim() const { return in_dim_; }
  int OutputDim() const { return out_dim_; }
  const std::string &WeightName() const { return w_name_; }
  const std::string &BiasName() const { return b_name_; }
  bool HasBias() const { return bias_; }

  Vector Forward(const ParamStore &params, const Vector &x) const;
  /// Row-wise application: x is N x in, result N x out.
  Matrix ForwardRows(const ParamStore &params, const Matrix &x) const;
  Matrix BackwardRows(const ParamStore &params, const Matrix &x, const Matrix &dy,
                      ParamStore *grads) const;

 private:
  std::string w_name_, b_name_;
  int in_dim_ = 0, out_dim_ = 0;
  bool bias_ = true;
};

struct LstmState {
  Vector h, c;
};

/// Activations of one cell update, kept for the backward pass.
struct LstmStepCache {
  Vector x, h_prev, c_prev;
  Vector i, f, g, o;  // post-nonlinearity gate values
  Vector c, tanh_c;
};

/// Standard LSTM cell, gates ordered (input, forget, candidate, output):
///   i = sig(Wi x + Ui h + bi)   f = sig(Wf x + Uf h + bf)
///   g = tanh(Wg x + Ug h + bg)  o = sig(Wo x + Uo h + bo)
///   c' = f*c + i*g              h' = o * tanh(c')
/// Tensors: <prefix>.w_x [4H, in], <prefix>.w_h [4H, H], <prefix>.b [4H].
class Lstm {
 public:
  Lstm() = default;
  Lstm(std::string prefix, int in_dim, int hidden_dim);

  void Register(ParamStore *store) const;
  /// Glorot weights, zero biases except the forget gate, which starts at +1.
  void Init(ParamStore *store, Rng *rng) const;

  int InputDim() const { return in_dim_; }
  int HiddenDim() const { return hidden_; }

  LstmState ZeroState() const;
  LstmState Step(const ParamStore &params, const Vector &x, const LstmState &prev,
                 LstmStepCache *cache = nullptr) const;
  /// Given dL/dh' and dL/dc' of one step, accumulates parameter gradients and
  /// returns dL/dx, dL/dh, dL/dc through the output pointers.
  void StepBackward(const ParamStore &params, const LstmStepCache &cache,
                    const Vector &dh, const Vector &dc, ParamStore *grads, Vector *dx,
                    Vector *dh_prev, Vector *dc_prev) const;

  struct SeqCache {
    Matrix x;      // T x in
    Matrix gates;  // T x 4H, post-nonlinearity
    Matrix c, h;   // T x H, indexed by frame
    bool reverse = false;
  };
  /// Runs the cell over all frames from a zero state; with `reverse` the
  /// frames are visited last-to-first. Row t of the result is the hidden
  /// state after consuming frame t.
  Matrix Forward(const ParamStore &params, const Matrix &x, bool reverse,
                 SeqCache *cache = nullptr) const;
  Matrix Backward(const ParamStore &params, const SeqCache &cache, const Matrix &d_out,
                  ParamStore *grads) const;

 private:
  std::string wx_name_, wh_name_, b_name_;
  int in_dim_ = 0, hidden_ = 0;
};

/// Forward and backward LSTMs over the same input; frame t of the output is
/// [forward state at t, backward state at t], width 2 * hidden.
class BiLstm {
 public:
  BiLstm() = default;
  BiLstm(const std::string &prefix, int in_dim, int hidden_dim);

  void Register(ParamStore *store) const;
  void Init(ParamStore *store, Rng *rng) const;

  int InputDim() const { return fwd_.InputDim(); }
  int OutputDim() const { return 2 * fwd_.HiddenDim(); }
  const Lstm &forward_lstm() const { return fwd_; }
  const Lstm &backward_lstm() const { return bwd_; }

  struct Cache {
    Lstm::SeqCache fwd, bwd;
  };
  Matrix Forward(const ParamStore &params, const Matrix &x, Cache *cache = nullptr) const;
  SequenceTensor Forward(const ParamStore &params, const SequenceTensor &seq) const;
  Matrix Backward(const ParamStore &params, const Cache &cache, const Matrix &d_out,
                  ParamStore *grads) const;

 private:
  Lstm fwd_, bwd_;
};

}  // namespace rntm

#endif  // RNTM_NNET_LAYERS_H_
