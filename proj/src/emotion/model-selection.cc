// emotion/model-selection.cc

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

#include "emotion/model-selection.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "base/rntm-common.h"
#include "nnet/rng.h"

namespace rntm {

void TrainingHistory::Add(HistoryEntry entry) {
  RNTM_REQUIRE(entry.dev_accuracy >= 0.0 && entry.dev_accuracy <= 1.0,
               "TrainingHistory: accuracy " << entry.dev_accuracy << " outside [0, 1]");
  RNTM_REQUIRE(entries_.empty() || entry.epoch > entries_.back().epoch,
               "TrainingHistory: epochs must increase");
  entries_.push_back(std::move(entry));
}

size_t TrainingHistory::BestIndex() const {
  RNTM_REQUIRE(!entries_.empty(), "TrainingHistory: empty history");
  size_t best = 0;
  for (size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i].dev_accuracy > entries_[best].dev_accuracy) best = i;
  return best;
}

bool TrainingHistory::ShouldStop(int patience) const {
  RNTM_REQUIRE(patience >= 1, "ShouldStop: patience must be >= 1");
  if (entries_.empty()) return false;
  return entries_.size() - 1 - BestIndex() >= static_cast<size_t>(patience);
}

nlohmann::json TrainingHistory::ToJson() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &e : entries_)
    out.push_back({{"epoch", e.epoch}, {"dev_accuracy", e.dev_accuracy}, {"checkpoint", e.checkpoint}});
  return out;
}

std::string SelectBestModel(const TrainingHistory &history) {
  return history.entries()[history.BestIndex()].checkpoint;
}

DevSplit StratifiedSplit(const std::vector<std::string> &labels, double dev_fraction,
                         uint64_t seed) {
  RNTM_REQUIRE(dev_fraction >= 0.0 && dev_fraction < 1.0,
               "StratifiedSplit: fraction must be in [0, 1)");
  std::map<std::string, std::vector<int>> by_class;
  for (size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(static_cast<int>(i));
  Rng rng(seed);
  std::vector<char> is_dev(labels.size(), 0);
  for (auto &[label, members] : by_class) {
    rng.Shuffle(&members);
    const size_t take = static_cast<size_t>(std::lround(dev_fraction * members.size()));
    for (size_t k = 0; k < take; ++k) is_dev[members[k]] = 1;
  }
  DevSplit split;
  for (size_t i = 0; i < labels.size(); ++i)
    (is_dev[i] ? split.dev : split.train).push_back(static_cast<int>(i));
  return split;
}

}  // namespace rntm
