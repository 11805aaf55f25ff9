// lid/lid-classifier.h

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

#ifndef RNTM_LID_LID_CLASSIFIER_H_
#define RNTM_LID_LID_CLASSIFIER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "lid/pooling-head.h"
#include "nnet/checkpoint.h"
#include "nnet/layers.h"
#include "nnet/param-store.h"

namespace rntm {

struct LidConfig {
  int input_dim = 64;    // transducer encoder output width
  int lstm_hidden = 16;  // per direction
  int num_heads = 4;
  int head_dim = 8;

  nlohmann::json ToJson() const;
  static LidConfig FromJson(const nlohmann::json &j);
  bool operator==(const LidConfig &) const = default;
};

/// Language classifier on transducer encoder output:
///   BiLSTM -> multi-head pooling -> linear -> softmax over languages.
/// Parameter names: "lid.bilstm.*", "lid.pool.pr{1,2,3}.*", "lid.out.*".
class LidClassifier {
 public:
  LidClassifier() = default;
  LidClassifier(const LidConfig &config, std::vector<std::string> languages, uint64_t seed);

  const LidConfig &config() const { return config_; }
  const std::vector<std::string> &languages() const { return languages_; }
  int NumLanguages() const { return static_cast<int>(languages_.size()); }
  /// -1 when absent.
  int LanguageIndex(const std::string &name) const;
  ParamStore &params() { return params_; }
  const ParamStore &params() const { return params_; }
  const BiLstm &bilstm() const { return bilstm_; }
  const PoolingHead &pooling() const { return pool_; }
  const Linear &output() const { return out_; }

  /// Whether the transducer encoder was tuned together with this classifier.
  bool encoder_finetune() const { return encoder_finetune_; }
  void set_encoder_finetune(bool v) { encoder_finetune_ = v; }

  Vector Logits(const SequenceTensor &enc) const;
  /// Language posteriors for one utterance's encoder output.
  Vector Probabilities(const SequenceTensor &enc) const;

  /// Cross-entropy -log p(language | enc). Gradients are accumulated into
  /// `grads` (a store with this classifier's layout); when `d_enc` is not
  /// null it receives d loss / d enc.
  double LossAndGrad(const SequenceTensor &enc, int language, ParamStore *grads,
                     Matrix *d_enc = nullptr) const;

  Checkpoint ToCheckpoint() const;
  static LidClassifier FromCheckpoint(const Checkpoint &ckpt);
  void Save(const std::string &path) const;
  static LidClassifier Load(const std::string &path);

 private:
  void BuildLayers();

  LidConfig config_;
  std::vector<std::string> languages_;
  bool encoder_finetune_ = false;
  ParamStore params_;
  BiLstm bilstm_;
  PoolingHead pool_;
  Linear out_;
};

}  // namespace rntm

#endif  // RNTM_LID_LID_CLASSIFIER_H_
