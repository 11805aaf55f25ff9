// transducer/rnnt-loss.h

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

#ifndef RNTM_TRANSDUCER_RNNT_LOSS_H_
#define RNTM_TRANSDUCER_RNNT_LOSS_H_

#include <span>

#include "nnet/matrix.h"

namespace rntm {

/// Forward/backward variables over the T x (U+1) alignment grid. Node (t, u)
/// means "u labels emitted, currently reading frame t". From (t, u) a blank
/// moves to (t+1, u) and label u+1 moves to (t, u+1); a final blank out of
/// (T-1, U) terminates the path.
struct RnntLattice {
  int num_frames = 0;  // T
  int num_labels = 0;  // U
  Matrix alpha;        // log P(reach node), alpha(0,0) = 0
  Matrix beta;         // log P(finish | at node), includes the final blank
  double total_from_alpha = 0.0;
  double total_from_beta = 0.0;
};

struct RnntLossResult {
  double loss = 0.0;  // -log P(target | input)
  RnntLattice lattice;
  /// d loss / d logits, same layout as the logits; empty unless requested.
  Matrix logit_grads;
};

/// Transducer negative log-likelihood from raw joint-network logits.
/// `logits` has T * (U+1) rows, row t * (U+1) + u holding the unnormalized
/// scores emitted at node (t, u), one column per vocabulary entry. The
/// target must not contain the blank. All arithmetic is in log space.
RnntLossResult RnntLoss(const Matrix &logits, int num_frames, std::span<const int> target,
                        int blank_id, bool want_grads = true);

}  // namespace rntm

#endif  // RNTM_TRANSDUCER_RNNT_LOSS_H_
