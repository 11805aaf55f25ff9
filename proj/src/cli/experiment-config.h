// cli/experiment-config.h

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

#ifndef RNTM_CLI_EXPERIMENT_CONFIG_H_
#define RNTM_CLI_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "lid/lid-classifier.h"
#include "synth/corpus-spec.h"
#include "transducer/rnnt-model.h"

namespace rntm {

struct OptimizerConfig {
  int epochs = 20;
  int batch_size = 8;
  double learning_rate = 0.1;
  double clip_norm = 5.0;  // <= 0 disables
};

struct AsrStageConfig {
  OptimizerConfig opt;
};

struct SerStageConfig {
  OptimizerConfig opt{30, 8, 0.05, 5.0};
  int patience = 5;
  /// Whether NEUTRAL training targets get a <NEUTRAL> tag too.
  bool tag_neutral = true;
  std::vector<std::string> freeze;  // glob patterns of frozen tensors
};

struct LidStageConfig {
  OptimizerConfig opt{30, 16, 0.1, 5.0};
  int lstm_hidden = 16;
  int num_heads = 4;
  int head_dim = 8;
  double dev_fraction = 0.1;
  int patience = 0;
  bool finetune_encoder = false;
};

struct DecodeConfig {
  int max_symbols_per_frame = 4;
  double gate_threshold = 0.5;
};

/// Everything an experiment depends on besides the data itself. Parsed
/// strictly: unknown keys anywhere are errors naming the key.
struct ExperimentConfig {
  uint64_t seed = 0;
  std::string description;
  std::string data_dir = "data";
  std::string output_dir = "out";
  CorpusConfig corpus;
  RnntConfig model;  // feature_dim is taken from the corpus
  AsrStageConfig asr;
  SerStageConfig ser;
  LidStageConfig lid;
  DecodeConfig decode;

  /// `seed` is mandatory.
  static ExperimentConfig FromJson(const nlohmann::json &j);
  static ExperimentConfig Load(const std::string &path);
  nlohmann::json ToJson() const;
  /// FNV-1a of the canonical JSON form (sorted keys, no whitespace).
  std::string Hash() const;
};

}  // namespace rntm

#endif  // RNTM_CLI_EXPERIMENT_CONFIG_H_
