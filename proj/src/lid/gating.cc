// lid/gating.cc

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

#include "lid/gating.h"

#include "base/rntm-common.h"
#include "metrics/report.h"
#include "nnet/nnet-math.h"

namespace rntm {

GateResult GateAndDecode(const RnntModel &asr, const LidClassifier &clf,
                         const SequenceTensor &features, const std::string &expected_language,
                         double threshold, int max_symbols_per_frame) {
  const int expected = clf.LanguageIndex(expected_language);
  RNTM_REQUIRE(expected >= 0, "gate: unknown language '" << expected_language << "'");
  RNTM_REQUIRE(threshold >= 0.0 && threshold <= 1.0,
               "gate: threshold " << threshold << " outside [0, 1]");
  const SequenceTensor enc = asr.Encode(features);
  GateResult r;
  r.probabilities = clf.Probabilities(enc);
  r.top_language = ArgMax(r.probabilities);
  r.accepted = r.probabilities[expected] >= threshold;
  if (r.accepted) r.transcript = asr.GreedyDecode(enc, max_symbols_per_frame);
  return r;
}

std::vector<LidTrial> ScoreTrials(const RnntModel &asr, const LidClassifier &clf,
                                  std::span<const LidExample> test, int num_threads) {
  RNTM_REQUIRE(!test.empty(), "ScoreTrials: empty test set");
  const int L = clf.NumLanguages();
  std::vector<LidTrial> trials(test.size() * L);
  ParallelFor(static_cast<int>(test.size()), num_threads, [&](int i) {
    const Vector p = clf.Probabilities(asr.Encode(*test[i].features));
    for (int l = 0; l < L; ++l)
      trials[i * L + l] = {test[i].utt_id, l, p[l], l == test[i].language};
  });
  return trials;
}

std::vector<Trial> PooledTrials(std::span<const LidTrial> trials) {
  std::vector<Trial> out;
  out.reserve(trials.size());
  for (const auto &t : trials) out.push_back({t.score, t.is_target});
  return out;
}

void WriteTrialCsv(std::ostream &os, std::span<const LidTrial> trials,
                   const std::vector<std::string> &languages) {
  os << "utt_id,lang,score,is_target\n";
  for (const auto &t : trials) {
    RNTM_REQUIRE(t.language >= 0 && t.language < static_cast<int>(languages.size()),
                 "trial language id " << t.language << " out of range");
    os << CsvEscape(t.utt_id) << ',' << CsvEscape(languages[t.language]) << ','
       << FormatDouble(t.score) << ',' << (t.is_target ? 1 : 0) << '\n';
  }
}

}  // namespace rntm
