// synth/dataset.h

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

#ifndef RNTM_SYNTH_DATASET_H_
#define RNTM_SYNTH_DATASET_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "nnet/matrix.h"

namespace rntm {

/// One labelled utterance. Transcript ids index the corpus symbol list.
struct FeatureSequence {
  std::string utt_id;
  SequenceTensor features;
  std::vector<int> transcript;
  int emotion = 0;
  int language = 0;

  bool operator==(const FeatureSequence &) const = default;
};

inline constexpr uint32_t kSyncVersion = 1;

/// "SYNC" file: magic, version u32, utterance count u32, then per utterance
/// utt_id, T u32, d u32, T*d float32 frames (row-major), U u32, U token ids
/// u32, emotion id u32, language id u32. All little-endian.
std::string SerializeDataset(const std::vector<FeatureSequence> &utts);
std::vector<FeatureSequence> ParseDataset(const std::string &bytes, const std::string &what);
void WriteDataset(const std::string &path, const std::vector<FeatureSequence> &utts);
std::vector<FeatureSequence> ReadDataset(const std::string &path);

/// Label maps and split files of a generated corpus, stored as
/// manifest.json next to the data files.
struct CorpusManifest {
  std::vector<std::string> symbols;  // id 0 is the word separator
  std::vector<std::string> languages;
  std::vector<std::string> emotions;
  int feature_dim = 0;
  uint64_t seed = 0;
  struct Split {
    std::string name, file;
    int count = 0;
    int duration_frames = 0;  // 0 for the regular splits
    std::string checksum;     // FNV-1a of the file bytes
  };
  std::vector<Split> splits;

  const Split &Find(const std::string &name) const;
  nlohmann::json ToJson() const;
  static CorpusManifest FromJson(const nlohmann::json &j);
};

/// Renders a transcript with the manifest's symbol strings.
std::string TranscriptText(const std::vector<std::string> &symbols,
                           const std::vector<int> &transcript);

}  // namespace rntm

#endif  // RNTM_SYNTH_DATASET_H_
