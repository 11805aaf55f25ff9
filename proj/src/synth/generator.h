// synth/generator.h

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

#ifndef RNTM_SYNTH_GENERATOR_H_
#define RNTM_SYNTH_GENERATOR_H_

#include <string>
#include <vector>

#include "nnet/rng.h"
#include "synth/corpus-spec.h"
#include "synth/dataset.h"

namespace rntm {

/// Samples one utterance: words from the language's bigram model separated
/// by " ", each symbol held for a random number of frames scaled by the
/// emotion's duration multiplier, frames = symbol mean + emotion offset +
/// Gaussian noise. With `num_frames` > 0 words are drawn until the frame
/// count is reached and the sequence is cut to exactly that length; the
/// transcript keeps the symbols with at least one frame left.
FeatureSequence GenerateUtterance(const CorpusSpec &spec, int language, int emotion,
                                  const std::string &utt_id, Rng *rng, int num_frames = 0);

/// `count` utterances with languages and emotions balanced (as even as the
/// count allows) and shuffled. Each split draws from its own seeded stream.
std::vector<FeatureSequence> GenerateSplit(const CorpusSpec &spec, const std::string &name,
                                           int count, int num_frames = 0);

/// Test sets of `spec.test` utterances cut to each of spec.durations.
std::vector<std::vector<FeatureSequence>> GenerateDurationTests(const CorpusSpec &spec);

/// Writes train/dev/test, every duration set, spec.json and manifest.json
/// into `dir` (created if missing). Returns the manifest.
CorpusManifest GenerateCorpus(const CorpusSpec &spec, const std::string &dir);

/// Reads manifest.json from a corpus directory.
CorpusManifest ReadManifest(const std::string &dir);
/// Loads one split listed in the manifest, verifying its checksum.
std::vector<FeatureSequence> LoadSplit(const std::string &dir, const CorpusManifest &manifest,
                                       const std::string &name);

std::string DurationSplitName(int frames);

}  // namespace rntm

#endif  // RNTM_SYNTH_GENERATOR_H_
