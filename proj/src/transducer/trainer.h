// transducer/trainer.h

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

#ifndef RNTM_TRANSDUCER_TRAINER_H_
#define RNTM_TRANSDUCER_TRAINER_H_

#include <span>
#include <string>
#include <vector>

#include "nnet/matrix.h"
#include "nnet/rng.h"
#include "transducer/rnnt-model.h"

namespace rntm {

struct TrainingExample {
  const SequenceTensor *features = nullptr;
  std::vector<int> target;
};

struct TrainStepOptions {
  double learning_rate = 0.05;
  /// Rescale the mean gradient so its L2 norm is at most this; <= 0 disables.
  double clip_norm = 0.0;
  int num_threads = 1;
};

/// One SGD update on `batch`. Per-utterance gradients are computed (possibly
/// in parallel) into separate buffers and summed in batch order, so results
/// do not depend on the thread count. Frozen tensors of the model are not
/// changed. Returns the mean loss before the update. Throws NumericalError
/// naming the batch index of the first utterance with a non-finite loss; the
/// model is left untouched in that case.
double TrainStep(RnntModel *model, std::span<const TrainingExample> batch,
                 const TrainStepOptions &opts);

/// Shuffles `examples` with `rng`, then calls TrainStep on consecutive
/// batches. Returns the mean of the per-batch losses.
double TrainEpoch(RnntModel *model, std::vector<TrainingExample> examples, int batch_size,
                  Rng *rng, const TrainStepOptions &opts);

/// Mean loss over `examples` without touching the model.
double MeanLoss(const RnntModel &model, std::span<const TrainingExample> examples,
                int num_threads = 1);

}  // namespace rntm

#endif  // RNTM_TRANSDUCER_TRAINER_H_
