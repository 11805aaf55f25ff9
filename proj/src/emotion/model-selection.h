// emotion/model-selection.h

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

#ifndef RNTM_EMOTION_MODEL_SELECTION_H_
#define RNTM_EMOTION_MODEL_SELECTION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace rntm {

struct HistoryEntry {
  int epoch = 0;
  double dev_accuracy = 0.0;  // in [0, 1]
  std::string checkpoint;     // opaque id, e.g. a file name
};

/// Per-epoch dev-set emotion accuracy. Epochs must be strictly increasing.
class TrainingHistory {
 public:
  void Add(HistoryEntry entry);
  const std::vector<HistoryEntry> &entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }

  /// Index of the best entry: highest accuracy, earliest on ties.
  size_t BestIndex() const;
  /// True once `patience` epochs have passed since the best one without a
  /// strict improvement.
  bool ShouldStop(int patience) const;

  nlohmann::json ToJson() const;

 private:
  std::vector<HistoryEntry> entries_;
};

/// Checkpoint id of the best entry. Throws ContractError on empty history.
std::string SelectBestModel(const TrainingHistory &history);

struct DevSplit {
  std::vector<int> train;  // ascending indices
  std::vector<int> dev;
};

/// Seeded split holding out round(fraction * n_c) items of every class c,
/// picked uniformly within the class.
DevSplit StratifiedSplit(const std::vector<std::string> &labels, double dev_fraction,
                         uint64_t seed);

}  // namespace rntm

#endif  // RNTM_EMOTION_MODEL_SELECTION_H_
