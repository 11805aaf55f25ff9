// nnet/matrix.cc

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

#include "nnet/matrix.h"

#include <utility>

#include "base/rntm-common.h"

namespace rntm {

SequenceTensor::SequenceTensor(Matrix frames) : frames_(std::move(frames)) {
  RNTM_REQUIRE(frames_.rows() >= 1, "SequenceTensor: need at least one frame");
  RNTM_REQUIRE(frames_.cols() >= 1, "SequenceTensor: need feature width >= 1");
  RNTM_REQUIRE(frames_.allFinite(), "SequenceTensor: non-finite entry");
}

}  // namespace rntm
