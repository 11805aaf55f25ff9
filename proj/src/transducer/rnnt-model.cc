// transducer/rnnt-model.cc

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

#include "transducer/rnnt-model.h"

#include <cmath>

#include "base/rntm-common.h"
#include "nnet/rng.h"
#include "transducer/greedy-decode.h"

namespace rntm {

namespace {
constexpr const char *kEmbedName = "predictor.embed";
constexpr const char *kJointBiasName = "joint.b";
}  // namespace

nlohmann::json RnntConfig::ToJson() const {
  return {{"feature_dim", feature_dim},       {"encoder_layers", encoder_layers},
          {"encoder_hidden", encoder_hidden}, {"embed_dim", embed_dim},
          {"predictor_hidden", predictor_hidden}, {"joint_hidden", joint_hidden}};
}

RnntConfig RnntConfig::FromJson(const nlohmann::json &j) {
  RnntConfig c;
  try {
    c.feature_dim = j.at("feature_dim").get<int>();
    c.encoder_layers = j.at("encoder_layers").get<int>();
    c.encoder_hidden = j.at("encoder_hidden").get<int>();
    c.embed_dim = j.at("embed_dim").get<int>();
    c.predictor_hidden = j.at("predictor_hidden").get<int>();
    c.joint_hidden = j.at("joint_hidden").get<int>();
  } catch (const nlohmann::json::exception &e) {
    throw ContractError(std::string("RnntConfig: ") + e.what());
  }
  return c;
}

RnntModel::RnntModel(const RnntConfig &config, Vocab vocab, uint64_t seed)
    : config_(config), vocab_(std::move(vocab)) {
  RNTM_REQUIRE(config_.feature_dim >= 1 && config_.encoder_layers >= 1 &&
                   config_.encoder_hidden >= 1 && config_.embed_dim >= 1 &&
                   config_.predictor_hidden >= 1 && config_.joint_hidden >= 1,
               "RnntModel: all dimensions must be positive");
  RNTM_REQUIRE(vocab_.Size() >= 2, "RnntModel: vocabulary needs a blank and a symbol");
  BuildLayers();
  for (const auto &layer : encoder_) layer.Register(&params_);
  params_.Add(kEmbedName, {vocab_.Size(), config_.embed_dim});
  predictor_.Register(&params_);
  joint_enc_.Register(&params_);
  joint_pred_.Register(&params_);
  params_.Add(kJointBiasName, {config_.joint_hidden});
  joint_out_.Register(&params_);

  Rng rng(seed);
  for (const auto &layer : encoder_) layer.Init(&params_, &rng);
  GlorotUniform(&params_.Get(kEmbedName), &rng);
  predictor_.Init(&params_, &rng);
  joint_enc_.Init(&params_, &rng);
  joint_pred_.Init(&params_, &rng);
  joint_out_.Init(&params_, &rng);
}

RnntModel::RnntModel(const RnntModel &other)
    : config_(other.config_), vocab_(other.vocab_), params_(other.params_),
      encoder_(other.encoder_), predictor_(other.predictor_), joint_enc_(other.joint_enc_),
      joint_pred_(other.joint_pred_), joint_out_(other.joint_out_),
      encode_calls_(other.encode_calls()) {}

RnntModel &RnntModel::operator=(const RnntModel &other) {
  if (this == &other) return *this;
  config_ = other.config_;
  vocab_ = other.vocab_;
  params_ = other.params_;
  encoder_ = other.encoder_;
  predictor_ = other.predictor_;
  joint_enc_ = other.joint_enc_;
  joint_pred_ = other.joint_pred_;
  joint_out_ = other.joint_out_;
  encode_calls_.store(other.encode_calls(), std::memory_order_relaxed);
  return *this;
}

void RnntModel::BuildLayers() {
  encoder_.clear();
  int in = config_.feature_dim;
  for (int l = 0; l < config_.encoder_layers; ++l) {
    encoder_.emplace_back("encoder.l" + std::to_string(l), in, config_.encoder_hidden);
    in = 2 * config_.encoder_hidden;
  }
  predictor_ = Lstm("predictor.lstm", config_.embed_dim, config_.predictor_hidden);
  joint_enc_ = Linear("joint.enc", config_.EncoderOutputDim(), config_.joint_hidden, false);
  joint_pred_ = Linear("joint.pred", config_.predictor_hidden, config_.joint_hidden, false);
  joint_out_ = Linear("joint.out", config_.joint_hidden, vocab_.Size(), true);
}

SequenceTensor RnntModel::Encode(const SequenceTensor &features, EncoderCache *cache) const {
  RNTM_REQUIRE(!features.Empty(), "Encode: empty feature sequence");
  RNTM_REQUIRE(features.Dim() == config_.feature_dim,
               "Encode: feature width " << features.Dim() << " != " << config_.feature_dim);
  encode_calls_.fetch_add(1, std::memory_order_relaxed);
  if (cache != nullptr) {
    cache->inputs.clear();
    cache->layers.assign(encoder_.size(), {});
  }
  Matrix x = features.frames();
  for (size_t l = 0; l < encoder_.size(); ++l) {
    if (cache != nullptr) cache->inputs.push_back(x);
    x = encoder_[l].Forward(params_, x, cache ? &cache->layers[l] : nullptr);
  }
  return SequenceTensor(std::move(x));
}

void RnntModel::EncoderBackward(const EncoderCache &cache, const Matrix &d_enc,
                                ParamStore *grads) const {
  RNTM_REQUIRE(cache.layers.size() == encoder_.size(), "EncoderBackward: missing cache");
  Matrix d = d_enc;
  for (size_t l = encoder_.size(); l-- > 0;) d = encoder_[l].Backward(params_, cache.layers[l], d, grads);
}

RnntModel::PredictorState RnntModel::PredictorStart() const {
  return PredictorAdvance(PredictorState{predictor_.ZeroState()}, vocab_.blank_id());
}

RnntModel::PredictorState RnntModel::PredictorAdvance(const PredictorState &state,
                                                      int token) const {
  RNTM_REQUIRE(token >= 0 && token < vocab_.Size(), "Predictor: token " << token << " out of range");
  Vector emb = params_.Mat(kEmbedName).row(token).transpose();
  return PredictorState{predictor_.Step(params_, emb, state.lstm)};
}

Matrix RnntModel::ProjectEncoder(const SequenceTensor &enc) const {
  return joint_enc_.ForwardRows(params_, enc.frames());
}

Vector RnntModel::JointLogits(const Vector &projected_enc_frame,
                              const Vector &predictor_out) const {
  Vector z = projected_enc_frame + joint_pred_.Forward(params_, predictor_out) +
             params_.Vec(kJointBiasName);
  return joint_out_.Forward(params_, z.array().tanh().matrix());
}

namespace {

struct JointActivations {
  Matrix emb_in;   // (U+1) x E predictor inputs
  Lstm::SeqCache pred_cache;
  Matrix pred;     // (U+1) x P
  Matrix hidden;   // T(U+1) x J, tanh outputs
  Matrix logits;   // T(U+1) x V
};

}  // namespace

Matrix RnntModel::LatticeLogits(const SequenceTensor &enc, std::span<const int> target) const {
  const int T = enc.NumFrames();
  const int U = static_cast<int>(target.size());
  Matrix emb_in(U + 1, config_.embed_dim);
  const auto embed = params_.Mat(kEmbedName);
  emb_in.row(0) = embed.row(vocab_.blank_id());
  for (int u = 0; u < U; ++u) {
    RNTM_REQUIRE(target[u] >= 0 && target[u] < vocab_.Size() && target[u] != vocab_.blank_id(),
                 "LatticeLogits: bad target id " << target[u]);
    emb_in.row(u + 1) = embed.row(target[u]);
  }
  const Matrix pred = predictor_.Forward(params_, emb_in, false);
  const Matrix a = joint_enc_.ForwardRows(params_, enc.frames());
  const Matrix b = joint_pred_.ForwardRows(params_, pred);
  const auto bias = params_.Vec(kJointBiasName);
  Matrix hidden(static_cast<Eigen::Index>(T) * (U + 1), config_.joint_hidden);
  for (int t = 0; t < T; ++t)
    for (int u = 0; u <= U; ++u)
      hidden.row(t * (U + 1) + u) = (a.row(t) + b.row(u) + bias.transpose()).array().tanh();
  return joint_out_.ForwardRows(params_, hidden);
}

double RnntModel::Loss(const SequenceTensor &features, std::span<const int> target) const {
  const SequenceTensor enc = Encode(features);
  return RnntLoss(LatticeLogits(enc, target), enc.NumFrames(), target, vocab_.blank_id(), false)
      .loss;
}

double RnntModel::LossAndGrad(const SequenceTensor &features, std::span<const int> target,
                              ParamStore *grads) const {
  const bool encoder_frozen = grads->AllFrozen("encoder.*");
  EncoderCache enc_cache;
  const SequenceTensor enc = Encode(features, encoder_frozen ? nullptr : &enc_cache);
  const int T = enc.NumFrames();
  const int U = static_cast<int>(target.size());

  JointActivations act;
  act.emb_in.resize(U + 1, config_.embed_dim);
  const auto embed = params_.Mat(kEmbedName);
  act.emb_in.row(0) = embed.row(vocab_.blank_id());
  for (int u = 0; u < U; ++u) {
    RNTM_REQUIRE(target[u] >= 0 && target[u] < vocab_.Size() && target[u] != vocab_.blank_id(),
                 "LossAndGrad: bad target id " << target[u]);
    act.emb_in.row(u + 1) = embed.row(target[u]);
  }
  act.pred = predictor_.Forward(params_, act.emb_in, false, &act.pred_cache);
  const Matrix a = joint_enc_.ForwardRows(params_, enc.frames());
  const Matrix b = joint_pred_.ForwardRows(params_, act.pred);
  const auto bias = params_.Vec(kJointBiasName);
  act.hidden.resize(static_cast<Eigen::Index>(T) * (U + 1), config_.joint_hidden);
  for (int t = 0; t < T; ++t)
    for (int u = 0; u <= U; ++u)
      act.hidden.row(t * (U + 1) + u) = (a.row(t) + b.row(u) + bias.transpose()).array().tanh();
  act.logits = joint_out_.ForwardRows(params_, act.hidden);

  RnntLossResult res = RnntLoss(act.logits, T, target, vocab_.blank_id(), true);
  if (!std::isfinite(res.loss)) return res.loss;

  Matrix d_hidden = joint_out_.BackwardRows(params_, act.hidden, res.logit_grads, grads);
  d_hidden.array() *= 1.0 - act.hidden.array().square();
  if (!grads->Get(kJointBiasName).frozen)
    grads->GradVec(kJointBiasName) += d_hidden.colwise().sum().transpose();
  Matrix da = Matrix::Zero(T, config_.joint_hidden);
  Matrix db = Matrix::Zero(U + 1, config_.joint_hidden);
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      const auto row = d_hidden.row(t * (U + 1) + u);
      da.row(t) += row;
      db.row(u) += row;
    }
  }
  const Matrix d_enc = joint_enc_.BackwardRows(params_, enc.frames(), da, grads);
  const Matrix d_pred = joint_pred_.BackwardRows(params_, act.pred, db, grads);
  const Matrix d_emb = predictor_.Backward(params_, act.pred_cache, d_pred, grads);
  if (!grads->Get(kEmbedName).frozen) {
    auto g = grads->GradMat(kEmbedName);
    g.row(vocab_.blank_id()) += d_emb.row(0);
    for (int u = 0; u < U; ++u) g.row(target[u]) += d_emb.row(u + 1);
  }
  if (!encoder_frozen) EncoderBackward(enc_cache, d_enc, grads);
  return res.loss;
}

namespace {

class ModelScorer {
 public:
  using State = RnntModel::PredictorState;
  ModelScorer(const RnntModel &model, Matrix projected)
      : model_(model), projected_(std::move(projected)) {}
  State Start() const { return model_.PredictorStart(); }
  Vector Logits(int t, const State &s) const {
    return model_.JointLogits(projected_.row(t).transpose(), s.lstm.h);
  }
  State Advance(const State &s, int token) const { return model_.PredictorAdvance(s, token); }

 private:
  const RnntModel &model_;
  Matrix projected_;
};

}  // namespace

std::vector<int> RnntModel::GreedyDecode(const SequenceTensor &enc,
                                         int max_symbols_per_frame) const {
  RNTM_REQUIRE(enc.Dim() == config_.EncoderOutputDim(),
               "GreedyDecode: encoder width " << enc.Dim() << " != " << config_.EncoderOutputDim());
  ModelScorer scorer(*this, ProjectEncoder(enc));
  return rntm::GreedyDecode(scorer, enc.NumFrames(), vocab_.blank_id(), max_symbols_per_frame);
}

void RnntModel::ExtendVocab(const Vocab &extended, uint64_t seed) {
  const int old_size = vocab_.Size();
  RNTM_REQUIRE(extended.Size() >= old_size && extended.blank_id() == vocab_.blank_id(),
               "ExtendVocab: new vocabulary must extend the current one");
  for (int i = 0; i < old_size; ++i)
    RNTM_REQUIRE(extended.Symbol(i) == vocab_.Symbol(i),
                 "ExtendVocab: symbol " << i << " differs from the current vocabulary");
  const int new_size = extended.Size();
  Rng rng(seed);
  auto grow_rows = [&](const std::string &name, int cols) {
    const Param &p = params_.Get(name);
    std::vector<double> values = p.value;
    values.resize(static_cast<size_t>(new_size) * cols, 0.0);
    const double a = std::sqrt(6.0 / (new_size + cols));
    for (size_t i = static_cast<size_t>(old_size) * cols; i < values.size(); ++i)
      values[i] = rng.Uniform(-a, a);
    const bool frozen = p.frozen;
    params_.Reshape(name, {new_size, cols}, std::move(values));
    params_.Get(name).frozen = frozen;
  };
  grow_rows(kEmbedName, config_.embed_dim);
  grow_rows(joint_out_.WeightName(), config_.joint_hidden);
  {
    const Param &p = params_.Get(joint_out_.BiasName());
    std::vector<double> values = p.value;
    values.resize(new_size, 0.0);
    const bool frozen = p.frozen;
    params_.Reshape(joint_out_.BiasName(), {new_size}, std::move(values));
    params_.Get(joint_out_.BiasName()).frozen = frozen;
  }
  vocab_ = extended;
  BuildLayers();
}

Checkpoint RnntModel::ToCheckpoint() const {
  Checkpoint ckpt;
  ckpt.params = params_;
  ckpt.metadata["kind"] = "rnnt";
  ckpt.metadata["config"] = config_.ToJson();
  ckpt.metadata["vocab"] = vocab_.ToJson();
  return ckpt;
}

RnntModel RnntModel::FromCheckpoint(const Checkpoint &ckpt) {
  RNTM_REQUIRE(ckpt.metadata.value("kind", "") == "rnnt", "checkpoint is not a transducer model");
  RNTM_REQUIRE(ckpt.metadata.contains("config") && ckpt.metadata.contains("vocab"),
               "transducer checkpoint lacks config or vocabulary");
  RnntModel model(RnntConfig::FromJson(ckpt.metadata["config"]),
                  Vocab::FromJson(ckpt.metadata["vocab"]), 0);
  RNTM_REQUIRE(model.params_.SameLayout(ckpt.params),
               "transducer checkpoint tensors do not match its config");
  model.params_ = ckpt.params;
  return model;
}

void RnntModel::Save(const std::string &path) const { WriteCheckpoint(path, ToCheckpoint()); }

RnntModel RnntModel::Load(const std::string &path) { return FromCheckpoint(ReadCheckpoint(path)); }

}  // namespace rntm
