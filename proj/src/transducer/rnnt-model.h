// transducer/rnnt-model.h

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

#ifndef RNTM_TRANSDUCER_RNNT_MODEL_H_
#define RNTM_TRANSDUCER_RNNT_MODEL_H_

#include <atomic>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "nnet/checkpoint.h"
#include "nnet/layers.h"
#include "nnet/param-store.h"
#include "transducer/rnnt-loss.h"
#include "transducer/vocab.h"

namespace rntm {

struct RnntConfig {
  int feature_dim = 16;
  int encoder_layers = 2;
  int encoder_hidden = 32;  // per direction; encoder output is 2x this
  int embed_dim = 16;
  int predictor_hidden = 32;
  int joint_hidden = 32;

  int EncoderOutputDim() const { return 2 * encoder_hidden; }
  nlohmann::json ToJson() const;
  static RnntConfig FromJson(const nlohmann::json &j);
  bool operator==(const RnntConfig &) const = default;
};

/// RNN transducer:
///   encoder    stacked BiLSTMs over the feature frames      "encoder.*"
///   predictor  embedding + unidirectional LSTM over labels  "predictor.*"
///   joint      out(tanh(W_enc e_t + W_pred p_u + b))        "joint.*"
/// The predictor starts from the blank's embedding and afterwards consumes
/// only emitted non-blank labels.
class RnntModel {
 public:
  RnntModel() = default;
  RnntModel(const RnntConfig &config, Vocab vocab, uint64_t seed);
  RnntModel(const RnntModel &other);
  RnntModel &operator=(const RnntModel &other);

  const RnntConfig &config() const { return config_; }
  const Vocab &vocab() const { return vocab_; }
  ParamStore &params() { return params_; }
  const ParamStore &params() const { return params_; }

  // ---- encoder
  struct EncoderCache {
    std::vector<Matrix> inputs;
    std::vector<BiLstm::Cache> layers;
  };
  /// Frame-level encoder embeddings (T x 2*encoder_hidden). Each call bumps
  /// the invocation counter.
  SequenceTensor Encode(const SequenceTensor &features, EncoderCache *cache = nullptr) const;
  /// Accumulates encoder gradients given d loss / d encoder output.
  void EncoderBackward(const EncoderCache &cache, const Matrix &d_enc, ParamStore *grads) const;
  int64_t encode_calls() const { return encode_calls_.load(std::memory_order_relaxed); }
  void ResetEncodeCalls() { encode_calls_.store(0, std::memory_order_relaxed); }
  const std::vector<BiLstm> &encoder_layers() const { return encoder_; }

  // ---- predictor
  struct PredictorState {
    LstmState lstm;  // lstm.h is the predictor output p_u
  };
  PredictorState PredictorStart() const;
  PredictorState PredictorAdvance(const PredictorState &state, int token) const;

  // ---- joint
  /// W_enc e for every frame; lets decoding apply the encoder-side projection
  /// once per utterance.
  Matrix ProjectEncoder(const SequenceTensor &enc) const;
  Vector JointLogits(const Vector &projected_enc_frame, const Vector &predictor_out) const;
  /// Logits of every lattice node, laid out as RnntLoss expects.
  Matrix LatticeLogits(const SequenceTensor &enc, std::span<const int> target) const;

  // ---- training
  /// -log P(target | features).
  double Loss(const SequenceTensor &features, std::span<const int> target) const;
  /// Loss plus gradients accumulated into `grads` (a store with this model's
  /// layout; may be params() itself). Encoder backprop is skipped when every
  /// encoder tensor is frozen in `grads`.
  double LossAndGrad(const SequenceTensor &features, std::span<const int> target,
                     ParamStore *grads) const;

  // ---- decoding
  std::vector<int> GreedyDecode(const SequenceTensor &enc, int max_symbols_per_frame = 4) const;

  /// Switches to a vocabulary that extends the current one with new symbols
  /// at the end (same blank, same leading symbols). Rows for new symbols in
  /// the embedding and output projection get fresh Glorot values.
  void ExtendVocab(const Vocab &extended, uint64_t seed);

  Checkpoint ToCheckpoint() const;
  static RnntModel FromCheckpoint(const Checkpoint &ckpt);
  void Save(const std::string &path) const;
  static RnntModel Load(const std::string &path);

 private:
  void BuildLayers();

  RnntConfig config_;
  Vocab vocab_;
  ParamStore params_;
  std::vector<BiLstm> encoder_;
  Lstm predictor_;
  Linear joint_enc_, joint_pred_, joint_out_;
  mutable std::atomic<int64_t> encode_calls_{0};
};

}  // namespace rntm

#endif  // RNTM_TRANSDUCER_RNNT_MODEL_H_
