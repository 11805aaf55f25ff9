// nnet/rng.h

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

#ifndef RNTM_NNET_RNG_H_
#define RNTM_NNET_RNG_H_

#include <array>
#include <cstdint>
#include <vector>

namespace rntm {

uint64_t SplitMix64(uint64_t *state);

/// xoshiro256** seeded through splitmix64. The integer stream is fully
/// specified, so data and initializations match across platforms; the
/// <random> distributions are avoided because their output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t NextU64();
  /// Uniform in [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  /// Uniform integer in [lo, hi] (inclusive), rejection-sampled.
  int64_t UniformInt(int64_t lo, int64_t hi);
  /// Standard normal via Box-Muller (one value per call, no caching).
  double Normal();
  double Normal(double mean, double stddev) { return mean + stddev * Normal(); }
  /// Index drawn from an unnormalized non-negative weight vector.
  int Categorical(const std::vector<double> &weights);

  template <typename T>
  void Shuffle(std::vector<T> *v) {
    for (size_t i = v->size(); i > 1; --i) {
      size_t j = static_cast<size_t>(UniformInt(0, static_cast<int64_t>(i) - 1));
      std::swap((*v)[i - 1], (*v)[j]);
    }
  }

  /// Independent generator for a named sub-task; same (seed, stream) pair
  /// always gives the same child.
  static Rng Derive(uint64_t seed, uint64_t stream);

 private:
  std::array<uint64_t, 4> s_;
};

}  // namespace rntm

#endif  // RNTM_NNET_RNG_H_
