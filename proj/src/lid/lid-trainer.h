// lid/lid-trainer.h

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

#ifndef RNTM_LID_LID_TRAINER_H_
#define RNTM_LID_LID_TRAINER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "emotion/model-selection.h"
#include "lid/lid-classifier.h"
#include "nnet/matrix.h"
#include "transducer/rnnt-model.h"

namespace rntm {

/// One labeled utterance. No transcript is needed.
struct LidExample {
  std::string utt_id;
  const SequenceTensor *features = nullptr;
  int language = 0;
};

struct LidTrainOptions {
  double learning_rate = 0.1;
  int epochs = 30;
  int batch_size = 16;
  double clip_norm = 5.0;    // <= 0 disables
  double dev_fraction = 0.1; // held out per language for model selection
  /// Stop after this many epochs without a validation improvement; 0 runs
  /// every epoch.
  int patience = 0;
  /// Backpropagate into the transducer encoder ("encoder.*") as well. Its
  /// stored freeze flags are ignored in this mode.
  bool finetune_encoder = false;
  uint64_t seed = 1;
  int num_threads = 1;
};

struct LidTrainResult {
  TrainingHistory history;  // validation accuracy per epoch
  size_t best_index = 0;
  std::vector<int> train_indices, dev_indices;  // into the input corpus
};

/// Trains `clf` with cross-entropy on language labels, holding out a
/// stratified validation split, and leaves `clf` (and, when fine-tuning, the
/// encoder of `asr`) at the epoch with the best validation accuracy. Without
/// fine-tuning `asr` is only read. Throws ContractError when fewer than two
/// languages occur or the validation split is empty.
LidTrainResult TrainLid(RnntModel *asr, LidClassifier *clf, std::span<const LidExample> corpus,
                        const LidTrainOptions &opts);

/// Fraction of utterances whose most probable language is the label.
double LidAccuracy(const RnntModel &asr, const LidClassifier &clf,
                   std::span<const LidExample> examples, int num_threads = 1);

}  // namespace rntm

#endif  // RNTM_LID_LID_TRAINER_H_
