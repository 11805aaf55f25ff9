// nnet/param-store.h

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

#ifndef RNTM_NNET_PARAM_STORE_H_
#define RNTM_NNET_PARAM_STORE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nnet/matrix.h"

namespace rntm {

/// One named tensor. `value` and `grad` always have Size() entries.
struct Param {
  std::vector<int> shape;
  std::vector<double> value;
  std::vector<double> grad;
  bool frozen = false;

  size_t Size() const { return value.size(); }
  int Rows() const { return shape.size() == 2 ? shape[0] : static_cast<int>(Size()); }
  int Cols() const { return shape.size() == 2 ? shape[1] : 1; }
};

/// Named parameter tensors with paired gradient buffers and per-tensor
/// freeze flags. Iteration is in lexicographic name order, which is what
/// serialization, checksums and reductions rely on.
///
/// Layers address their weights by name. Gradient buffers are taken from a
/// possibly different store with the same layout, so several utterances can
/// be differentiated concurrently into private buffers (see GradientBuffer()).
class ParamStore {
 public:
  /// Adds a zero-filled tensor. Fails if the name exists or a dim is < 1.
  Param &Add(const std::string &name, std::vector<int> shape);
  bool Contains(const std::string &name) const { return entries_.count(name) != 0; }
  Param &Get(const std::string &name);
  const Param &Get(const std::string &name) const;
  /// Replaces the tensor under `name`, growing or shrinking it; grads reset.
  void Reshape(const std::string &name, std::vector<int> shape,
               std::vector<double> values);
  void Remove(const std::string &name) { entries_.erase(name); }

  ConstMatrixMap Mat(const std::string &name) const;
  MatrixMap GradMat(const std::string &name);
  ConstVectorMap Vec(const std::string &name) const;
  VectorMap GradVec(const std::string &name);

  std::vector<std::string> Names() const;
  size_t NumTensors() const { return entries_.size(); }
  size_t NumParams() const;

  void ZeroGrad();
  /// Adds `other`'s gradients elementwise; layouts must match.
  void AccumulateGrad(const ParamStore &other, double scale = 1.0);
  /// value -= lr * grad for every non-frozen tensor.
  void SgdStep(double lr);
  /// Sum of squared gradients over non-frozen tensors.
  double GradNormSquared() const;
  void ScaleGrad(double factor);

  /// Sets `frozen` on every tensor whose name matches the shell-style glob
  /// (e.g. "encoder.*"); returns the number of matches.
  int SetFrozen(const std::string &pattern, bool frozen);
  /// Frozen := name matches any pattern; everything else is unfrozen.
  void ApplyFreezePatterns(const std::vector<std::string> &patterns);
  bool AllFrozen(const std::string &pattern) const;

  /// FNV-1a over the names and raw value bytes of tensors matching `pattern`.
  uint64_t Checksum(const std::string &pattern = "*") const;

  /// Copy of this store with zeroed gradients, to be used as a private
  /// gradient buffer.
  ParamStore GradientBuffer() const;
  /// Copies values (and frozen flags) from `other` for every tensor of this
  /// store whose name matches `pattern`; shapes must agree.
  void CopyValuesFrom(const ParamStore &other, const std::string &pattern = "*");

  bool SameLayout(const ParamStore &other) const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }

 private:
  std::map<std::string, Param> entries_;
};

bool GlobMatch(const std::string &pattern, const std::string &name);

}  // namespace rntm

#endif  // RNTM_NNET_PARAM_STORE_H_
