// synth/corpus-spec.h

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

#ifndef RNTM_SYNTH_CORPUS_SPEC_H_
#define RNTM_SYNTH_CORPUS_SPEC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "base/json-config.h"
#include "nnet/matrix.h"

namespace rntm {

/// Knobs from which a full CorpusSpec is drawn. Defaults give three
/// languages over 8-letter inventories sharing half their letters with each
/// neighbour, 16-dim features and four emotions.
struct CorpusConfig {
  int num_languages = 3;
  int inventory_size = 8;
  double overlap = 0.5;        // fraction of an inventory shared with the next language
  int feature_dim = 16;
  double noise_std = 0.3;
  double symbol_scale = 1.0;   // std of letter mean vectors
  double accent_std = 0.2;     // per-language jitter of shared letter means
  std::vector<std::string> emotions = {"NEUTRAL", "HAPPY", "ANGRY", "SAD"};
  double emotion_offset = 2.0; // norm of each non-neutral offset vector
  std::vector<double> duration_multipliers = {1.0, 0.8, 0.9, 1.3};
  int min_frames_per_symbol = 3, max_frames_per_symbol = 5;
  int min_words = 1, max_words = 3;
  int min_word_length = 2, max_word_length = 4;
  int train = 500, dev = 50, test = 100;
  std::vector<int> durations = {10, 30, 100, 300};

  /// Reads the "corpus" section; absent keys keep their defaults.
  static CorpusConfig FromConfig(const ConfigSection &s);
  nlohmann::json ToJson() const;
};

struct LanguageSpec {
  std::string name;
  std::vector<int> inventory;  // corpus symbol ids, separator excluded
  /// (n+1) x n: row 0 is the word-initial distribution, row i+1 follows
  /// inventory[i]. Rows sum to 1.
  Matrix bigram;
  Matrix means;  // n x d, row i for inventory[i]
};

struct EmotionSpec {
  std::string name;
  Vector offset;                   // added to every frame
  double duration_multiplier = 1;  // scales frames per symbol
};

/// Fully explicit description of a synthetic corpus.
struct CorpusSpec {
  /// Symbol strings; id 0 is the word separator " ".
  std::vector<std::string> symbols;
  Vector separator_mean;
  std::vector<LanguageSpec> languages;
  std::vector<EmotionSpec> emotions;
  int feature_dim = 0;
  double noise_std = 0.0;
  int min_frames_per_symbol = 1, max_frames_per_symbol = 1;
  int min_words = 1, max_words = 1;
  int min_word_length = 1, max_word_length = 1;
  int train = 0, dev = 0, test = 0;
  std::vector<int> durations;
  uint64_t seed = 0;

  int EmotionIndex(const std::string &name) const;  // -1 if absent
  int LanguageIndex(const std::string &name) const;
  /// Throws ContractError naming the first invalid field.
  void Validate() const;
  nlohmann::json ToJson() const;
};

inline constexpr int kSeparatorId = 0;

/// Draws letter means, bigram tables and emotion offsets from `seed`.
CorpusSpec BuildCorpusSpec(const CorpusConfig &config, uint64_t seed);

}  // namespace rntm

#endif  // RNTM_SYNTH_CORPUS_SPEC_H_
