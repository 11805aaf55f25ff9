// transducer/trainer.cc

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

#include "transducer/trainer.h"

#include <algorithm>
#include <cmath>

#include "base/rntm-common.h"

namespace rntm {

double TrainStep(RnntModel *model, std::span<const TrainingExample> batch,
                 const TrainStepOptions &opts) {
  RNTM_REQUIRE(!batch.empty(), "TrainStep: empty batch");
  RNTM_REQUIRE(opts.learning_rate > 0.0, "TrainStep: learning rate must be positive");
  const size_t n = batch.size();
  const int threads = std::max(1, std::min<int>(opts.num_threads, static_cast<int>(n)));

  // Each worker owns a slot so the reduction order is fixed by batch index.
  std::vector<ParamStore> grads(n);
  std::vector<double> losses(n, 0.0);
  const RnntModel &m = *model;
  ParallelFor(static_cast<int>(n), threads, [&](int i) {
    RNTM_REQUIRE(batch[i].features != nullptr, "TrainStep: example " << i << " has no features");
    grads[i] = m.params().GradientBuffer();
    losses[i] = m.LossAndGrad(*batch[i].features, batch[i].target, &grads[i]);
  });
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(losses[i]))
      throw NumericalError("non-finite transducer loss at batch index " + std::to_string(i));
    total += losses[i];
  }

  ParamStore &params = model->params();
  params.ZeroGrad();
  for (size_t i = 0; i < n; ++i) params.AccumulateGrad(grads[i], 1.0 / n);
  const double norm2 = params.GradNormSquared();
  if (!std::isfinite(norm2)) throw NumericalError("non-finite transducer gradient");
  if (opts.clip_norm > 0.0 && norm2 > opts.clip_norm * opts.clip_norm)
    params.ScaleGrad(opts.clip_norm / std::sqrt(norm2));
  params.SgdStep(opts.learning_rate);
  params.ZeroGrad();
  return total / n;
}

double TrainEpoch(RnntModel *model, std::vector<TrainingExample> examples, int batch_size,
                  Rng *rng, const TrainStepOptions &opts) {
  RNTM_REQUIRE(batch_size >= 1, "TrainEpoch: batch size must be >= 1");
  RNTM_REQUIRE(!examples.empty(), "TrainEpoch: no training examples");
  rng->Shuffle(&examples);
  double sum = 0.0;
  int batches = 0;
  for (size_t start = 0; start < examples.size(); start += batch_size) {
    const size_t len = std::min<size_t>(batch_size, examples.size() - start);
    sum += TrainStep(model, std::span<const TrainingExample>(examples.data() + start, len), opts);
    ++batches;
  }
  return sum / batches;
}

double MeanLoss(const RnntModel &model, std::span<const TrainingExample> examples,
                int num_threads) {
  RNTM_REQUIRE(!examples.empty(), "MeanLoss: no examples");
  std::vector<double> losses(examples.size());
  ParallelFor(static_cast<int>(examples.size()), std::max(1, num_threads), [&](int i) {
    losses[i] = model.Loss(*examples[i].features, examples[i].target);
  });
  double sum = 0.0;
  for (double l : losses) sum += l;
  return sum / examples.size();
}

}  // namespace rntm
