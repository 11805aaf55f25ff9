// transducer/greedy-decode.h

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

#ifndef RNTM_TRANSDUCER_GREEDY_DECODE_H_
#define RNTM_TRANSDUCER_GREEDY_DECODE_H_

#include <concepts>
#include <vector>

#include "base/rntm-common.h"
#include "nnet/matrix.h"
#include "nnet/nnet-math.h"

namespace rntm {

/// Anything that can score the next output symbol of a transducer: a start
/// state for the label history, per-frame logits given that state, and a
/// state update after a non-blank emission.
template <typename S>
concept TransducerScorer = requires(const S &s, const typename S::State &state, int t, int k) {
  { s.Start() } -> std::convertible_to<typename S::State>;
  { s.Logits(t, state) } -> std::convertible_to<Vector>;
  { s.Advance(state, k) } -> std::convertible_to<typename S::State>;
};

/// At each frame, keep emitting the argmax symbol (lowest id on ties) while
/// it is not blank, at most max_symbols_per_frame times, then move to the
/// next frame. Emits at most num_frames * max_symbols_per_frame symbols.
template <TransducerScorer S>
std::vector<int> GreedyDecode(const S &scorer, int num_frames, int blank_id,
                              int max_symbols_per_frame) {
  RNTM_REQUIRE(max_symbols_per_frame >= 1, "GreedyDecode: max_symbols_per_frame must be >= 1");
  std::vector<int> out;
  typename S::State state = scorer.Start();
  for (int t = 0; t < num_frames; ++t) {
    for (int emitted = 0; emitted < max_symbols_per_frame; ++emitted) {
      const int best = ArgMax(scorer.Logits(t, state));
      if (best == blank_id) break;
      out.push_back(best);
      state = scorer.Advance(state, best);
    }
  }
  return out;
}

}  // namespace rntm

#endif  // RNTM_TRANSDUCER_GREEDY_DECODE_H_
