// lid/gating.h

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

#ifndef RNTM_LID_GATING_H_
#define RNTM_LID_GATING_H_

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lid/lid-classifier.h"
#include "lid/lid-trainer.h"
#include "metrics/detection.h"
#include "transducer/rnnt-model.h"

namespace rntm {

struct GateResult {
  bool accepted = false;
  int top_language = 0;
  Vector probabilities;
  std::vector<int> transcript;  // empty unless accepted
};

/// Encodes `features` once, scores the languages on that encoder output and,
/// if p(expected_language) >= threshold, greedy-decodes the same output.
GateResult GateAndDecode(const RnntModel &asr, const LidClassifier &clf,
                         const SequenceTensor &features, const std::string &expected_language,
                         double threshold, int max_symbols_per_frame = 4);

/// One detection trial: utterance `utt_id` scored against language `language`.
struct LidTrial {
  std::string utt_id;
  int language = 0;
  double score = 0.0;
  bool is_target = false;
};

/// L trials per utterance, one per language, with score p(language) and
/// is_target = (language == label). Utterance order, then language order.
std::vector<LidTrial> ScoreTrials(const RnntModel &asr, const LidClassifier &clf,
                                  std::span<const LidExample> test, int num_threads = 1);

/// The trials pooled into one detection task.
std::vector<Trial> PooledTrials(std::span<const LidTrial> trials);

/// CSV with header `utt_id,lang,score,is_target`.
void WriteTrialCsv(std::ostream &os, std::span<const LidTrial> trials,
                   const std::vector<std::string> &languages);

}  // namespace rntm

#endif  // RNTM_LID_GATING_H_
