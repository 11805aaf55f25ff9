// lid/lid-trainer.cc

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

#include "lid/lid-trainer.h"

#include <cmath>
#include <optional>
#include <set>

#include "base/rntm-common.h"
#include "nnet/nnet-math.h"
#include "nnet/rng.h"

namespace rntm {

namespace {

constexpr const char *kEncoderPattern = "encoder.*";

void ClipAndStep(ParamStore *params, const ParamStore &grads, double lr, double clip,
                 double scale, const char *pattern) {
  double sq = 0.0;
  for (const auto &[name, p] : grads)
    if (GlobMatch(pattern, name))
      for (double g : p.grad) sq += g * g;
  const double norm = std::sqrt(sq) * scale;
  const double factor = (clip > 0.0 && norm > clip) ? scale * clip / norm : scale;
  for (auto &[name, p] : *params) {
    if (!GlobMatch(pattern, name)) continue;
    const auto &g = grads.Get(name).grad;
    for (size_t i = 0; i < p.value.size(); ++i) p.value[i] -= lr * factor * g[i];
  }
}

}  // namespace

double LidAccuracy(const RnntModel &asr, const LidClassifier &clf,
                   std::span<const LidExample> examples, int num_threads) {
  RNTM_REQUIRE(!examples.empty(), "LidAccuracy: no examples");
  std::vector<int> hit(examples.size());
  ParallelFor(static_cast<int>(examples.size()), num_threads, [&](int i) {
    const Vector p = clf.Probabilities(asr.Encode(*examples[i].features));
    hit[i] = ArgMax(p) == examples[i].language;
  });
  int n = 0;
  for (int h : hit) n += h;
  return static_cast<double>(n) / examples.size();
}

LidTrainResult TrainLid(RnntModel *asr, LidClassifier *clf, std::span<const LidExample> corpus,
                        const LidTrainOptions &opts) {
  RNTM_REQUIRE(opts.learning_rate > 0.0 && opts.epochs >= 1 && opts.batch_size >= 1,
               "TrainLid: learning rate, epochs and batch size must be positive");
  RNTM_REQUIRE(asr->config().EncoderOutputDim() == clf->config().input_dim,
               "TrainLid: encoder width " << asr->config().EncoderOutputDim()
                                          << " != classifier input " << clf->config().input_dim);
  std::set<int> present;
  std::vector<std::string> labels;
  for (const auto &ex : corpus) {
    RNTM_REQUIRE(ex.features != nullptr, "TrainLid: example without features");
    RNTM_REQUIRE(ex.language >= 0 && ex.language < clf->NumLanguages(),
                 "TrainLid: language id " << ex.language << " out of range");
    present.insert(ex.language);
    labels.push_back(std::to_string(ex.language));
  }
  RNTM_REQUIRE(present.size() >= 2, "TrainLid: corpus holds " << present.size()
                                                              << " language(s), need at least 2");

  LidTrainResult result;
  const DevSplit split = StratifiedSplit(labels, opts.dev_fraction, opts.seed);
  RNTM_REQUIRE(!split.dev.empty(), "TrainLid: validation split is empty");
  RNTM_REQUIRE(!split.train.empty(), "TrainLid: training split is empty");
  result.train_indices = split.train;
  result.dev_indices = split.dev;
  std::vector<LidExample> dev;
  for (int i : split.dev) dev.push_back(corpus[i]);

  // With a fixed encoder its output never changes, so encode once.
  std::vector<SequenceTensor> cached;
  if (!opts.finetune_encoder) {
    cached.resize(corpus.size());
    ParallelFor(static_cast<int>(corpus.size()), opts.num_threads,
                [&](int i) { cached[i] = asr->Encode(*corpus[i].features); });
  }
  auto dev_accuracy = [&]() {
    if (opts.finetune_encoder) return LidAccuracy(*asr, *clf, dev, opts.num_threads);
    int n = 0;
    for (int i : split.dev) n += ArgMax(clf->Probabilities(cached[i])) == corpus[i].language;
    return static_cast<double>(n) / split.dev.size();
  };

  Rng rng = Rng::Derive(opts.seed, 0x11d);
  std::vector<int> order = split.train;
  LidClassifier best_clf = *clf;
  std::optional<RnntModel> best_asr;
  if (opts.finetune_encoder) best_asr = *asr;
  for (int epoch = 1; epoch <= opts.epochs; ++epoch) {
    rng.Shuffle(&order);
    for (size_t start = 0; start < order.size(); start += opts.batch_size) {
      const int n = static_cast<int>(std::min<size_t>(opts.batch_size, order.size() - start));
      std::vector<ParamStore> clf_grads(n);
      std::vector<ParamStore> enc_grads(opts.finetune_encoder ? n : 0);
      std::vector<double> losses(n);
      ParallelFor(n, opts.num_threads, [&](int b) {
        const int i = order[start + b];
        clf_grads[b] = clf->params().GradientBuffer();
        if (!opts.finetune_encoder) {
          losses[b] = clf->LossAndGrad(cached[i], corpus[i].language, &clf_grads[b]);
          return;
        }
        RnntModel::EncoderCache cache;
        const SequenceTensor enc = asr->Encode(*corpus[i].features, &cache);
        Matrix d_enc;
        losses[b] = clf->LossAndGrad(enc, corpus[i].language, &clf_grads[b], &d_enc);
        if (!std::isfinite(losses[b])) return;
        enc_grads[b] = asr->params().GradientBuffer();
        for (auto &[name, p] : enc_grads[b]) p.frozen = false;
        asr->EncoderBackward(cache, d_enc, &enc_grads[b]);
      });
      for (int b = 0; b < n; ++b)
        if (!std::isfinite(losses[b]))
          throw NumericalError("non-finite LID loss for utterance " + corpus[order[start + b]].utt_id);
      ParamStore g = clf->params().GradientBuffer();
      for (int b = 0; b < n; ++b) g.AccumulateGrad(clf_grads[b]);
      ClipAndStep(&clf->params(), g, opts.learning_rate, opts.clip_norm, 1.0 / n, "*");
      if (opts.finetune_encoder) {
        ParamStore ge = asr->params().GradientBuffer();
        for (int b = 0; b < n; ++b) ge.AccumulateGrad(enc_grads[b]);
        ClipAndStep(&asr->params(), ge, opts.learning_rate, opts.clip_norm, 1.0 / n,
                    kEncoderPattern);
      }
    }
    const size_t before = result.history.empty() ? 0 : result.history.BestIndex();
    result.history.Add({epoch, dev_accuracy(), "epoch-" + std::to_string(epoch)});
    if (result.history.size() == 1 || result.history.BestIndex() != before) {
      best_clf = *clf;
      if (opts.finetune_encoder) best_asr = *asr;
    }
    if (opts.patience > 0 && result.history.ShouldStop(opts.patience)) break;
  }
  result.best_index = result.history.BestIndex();
  *clf = best_clf;
  clf->set_encoder_finetune(opts.finetune_encoder);
  if (opts.finetune_encoder) asr->params().CopyValuesFrom(best_asr->params(), kEncoderPattern);
  return result;
}

}  // namespace rntm
