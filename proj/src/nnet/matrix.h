// nnet/matrix.h

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

#ifndef RNTM_NNET_MATRIX_H_
#define RNTM_NNET_MATRIX_H_

#include <Eigen/Core>

namespace rntm {

// All training-time math is double precision; frames are stored row-major so
// that row t of a sequence is frame t.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using MatrixMap = Eigen::Map<Matrix>;
using ConstMatrixMap = Eigen::Map<const Matrix>;
using VectorMap = Eigen::Map<Vector>;
using ConstVectorMap = Eigen::Map<const Vector>;

/// A T x d matrix of frame vectors with T >= 1, d >= 1 and finite entries.
class SequenceTensor {
 public:
  SequenceTensor() = default;
  /// Validates the invariants; throws ContractError otherwise.
  explicit SequenceTensor(Matrix frames);

  int NumFrames() const { return static_cast<int>(frames_.rows()); }
  int Dim() const { return static_cast<int>(frames_.cols()); }
  const Matrix &frames() const { return frames_; }
  bool Empty() const { return frames_.size() == 0; }

  bool operator==(const SequenceTensor &other) const {
    return frames_.rows() == other.frames_.rows() &&
           frames_.cols() == other.frames_.cols() && frames_ == other.frames_;
  }

 private:
  Matrix frames_;
};

}  // namespace rntm

#endif  // RNTM_NNET_MATRIX_H_
