// lid/lid-classifier.cc

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

#include "lid/lid-classifier.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "base/rntm-common.h"
#include "nnet/nnet-math.h"

namespace rntm {

nlohmann::json LidConfig::ToJson() const {
  return {{"input_dim", input_dim},
          {"lstm_hidden", lstm_hidden},
          {"num_heads", num_heads},
          {"head_dim", head_dim}};
}

LidConfig LidConfig::FromJson(const nlohmann::json &j) {
  LidConfig c;
  try {
    c.input_dim = j.at("input_dim").get<int>();
    c.lstm_hidden = j.at("lstm_hidden").get<int>();
    c.num_heads = j.at("num_heads").get<int>();
    c.head_dim = j.at("head_dim").get<int>();
  } catch (const nlohmann::json::exception &e) {
    throw ContractError(std::string("lid config: ") + e.what());
  }
  return c;
}

LidClassifier::LidClassifier(const LidConfig &config, std::vector<std::string> languages,
                             uint64_t seed)
    : config_(config), languages_(std::move(languages)) {
  BuildLayers();
  Rng rng(seed);
  bilstm_.Init(&params_, &rng);
  pool_.Init(&params_, &rng);
  out_.Init(&params_, &rng);
}

void LidClassifier::BuildLayers() {
  RNTM_REQUIRE(languages_.size() >= 2, "LID classifier needs at least two languages");
  RNTM_REQUIRE(std::set<std::string>(languages_.begin(), languages_.end()).size() ==
                   languages_.size(),
               "LID classifier: repeated language name");
  RNTM_REQUIRE(config_.input_dim >= 1 && config_.lstm_hidden >= 1 && config_.num_heads >= 1 &&
                   config_.head_dim >= 1,
               "LID classifier: dimensions must be positive");
  params_ = ParamStore();
  bilstm_ = BiLstm("lid.bilstm", config_.input_dim, config_.lstm_hidden);
  pool_ = PoolingHead("lid.pool", bilstm_.OutputDim(), config_.num_heads, config_.head_dim);
  out_ = Linear("lid.out", pool_.OutputDim(), NumLanguages());
  bilstm_.Register(&params_);
  pool_.Register(&params_);
  out_.Register(&params_);
}

int LidClassifier::LanguageIndex(const std::string &name) const {
  const auto it = std::find(languages_.begin(), languages_.end(), name);
  return it == languages_.end() ? -1 : static_cast<int>(it - languages_.begin());
}

Vector LidClassifier::Logits(const SequenceTensor &enc) const {
  RNTM_REQUIRE(enc.Dim() == config_.input_dim,
               "LID classifier: encoder width " << enc.Dim() << " != " << config_.input_dim);
  const Matrix h = bilstm_.Forward(params_, enc.frames());
  return out_.Forward(params_, pool_.Forward(params_, h));
}

Vector LidClassifier::Probabilities(const SequenceTensor &enc) const {
  return Softmax(Logits(enc));
}

double LidClassifier::LossAndGrad(const SequenceTensor &enc, int language, ParamStore *grads,
                                  Matrix *d_enc) const {
  RNTM_REQUIRE(enc.Dim() == config_.input_dim,
               "LID classifier: encoder width " << enc.Dim() << " != " << config_.input_dim);
  RNTM_REQUIRE(language >= 0 && language < NumLanguages(),
               "LID classifier: language id " << language << " out of range");
  BiLstm::Cache lstm_cache;
  PoolingHead::Cache pool_cache;
  const Matrix h = bilstm_.Forward(params_, enc.frames(), &lstm_cache);
  const Vector y = pool_.Forward(params_, h, &pool_cache);
  const Vector logp = LogSoftmax(out_.Forward(params_, y));
  const double loss = -logp[language];
  if (!std::isfinite(loss)) return loss;

  Vector dlogits = logp.array().exp().matrix();
  dlogits[language] -= 1.0;
  const Matrix dy = out_.BackwardRows(params_, y.transpose(), dlogits.transpose(), grads);
  const Matrix dh = pool_.Backward(params_, pool_cache, dy.row(0).transpose(), grads);
  const Matrix dx = bilstm_.Backward(params_, lstm_cache, dh, grads);
  if (d_enc != nullptr) *d_enc = dx;
  return loss;
}

Checkpoint LidClassifier::ToCheckpoint() const {
  Checkpoint c;
  c.params = params_;
  c.metadata["kind"] = "lid";
  c.metadata["config"] = config_.ToJson();
  c.metadata["languages"] = languages_;
  c.metadata["encoder_finetune"] = encoder_finetune_;
  return c;
}

LidClassifier LidClassifier::FromCheckpoint(const Checkpoint &ckpt) {
  LidClassifier clf;
  try {
    RNTM_REQUIRE(ckpt.metadata.at("kind").get<std::string>() == "lid",
                 "checkpoint does not hold a LID classifier");
    clf.config_ = LidConfig::FromJson(ckpt.metadata.at("config"));
    clf.languages_ = ckpt.metadata.at("languages").get<std::vector<std::string>>();
    clf.encoder_finetune_ = ckpt.metadata.at("encoder_finetune").get<bool>();
  } catch (const nlohmann::json::exception &e) {
    throw ContractError(std::string("LID checkpoint metadata: ") + e.what());
  }
  clf.BuildLayers();
  RNTM_REQUIRE(clf.params_.SameLayout(ckpt.params),
               "LID checkpoint tensors do not match its configuration");
  clf.params_ = ckpt.params;
  return clf;
}

void LidClassifier::Save(const std::string &path) const { WriteCheckpoint(path, ToCheckpoint()); }

LidClassifier LidClassifier::Load(const std::string &path) {
  return FromCheckpoint(ReadCheckpoint(path));
}

}  // namespace rntm
