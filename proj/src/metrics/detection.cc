// metrics/detection.cc

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

#include "metrics/detection.h"

#include <algorithm>
#include <cmath>

#include "base/rntm-common.h"

namespace rntm {

std::vector<RocPoint> RocPoints(std::span<const Trial> trials) {
  int num_tgt = 0, num_non = 0;
  for (const Trial &t : trials) {
    RNTM_REQUIRE(std::isfinite(t.score), "EER: non-finite trial score");
    (t.is_target ? num_tgt : num_non)++;
  }
  RNTM_REQUIRE(num_tgt > 0, "EER: no target trials");
  RNTM_REQUIRE(num_non > 0, "EER: no non-target trials");

  std::vector<Trial> sorted(trials.begin(), trials.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Trial &a, const Trial &b) { return a.score > b.score; });
  std::vector<RocPoint> points = {{0.0, 1.0}};
  int acc_tgt = 0, acc_non = 0;
  for (size_t i = 0; i < sorted.size();) {
    const double s = sorted[i].score;
    for (; i < sorted.size() && sorted[i].score == s; ++i)
      (sorted[i].is_target ? acc_tgt : acc_non)++;
    points.push_back({static_cast<double>(acc_non) / num_non,
                      1.0 - static_cast<double>(acc_tgt) / num_tgt});
  }
  return points;
}

std::vector<RocPoint> RocConvexHull(std::span<const Trial> trials) {
  // Points arrive sorted by FAR (non-decreasing) with FRR non-increasing;
  // a monotone-chain pass keeps the lower hull.
  const std::vector<RocPoint> points = RocPoints(trials);
  auto cross = [](const RocPoint &o, const RocPoint &a, const RocPoint &b) {
    return (a.far - o.far) * (b.frr - o.frr) - (a.frr - o.frr) * (b.far - o.far);
  };
  std::vector<RocPoint> hull;
  for (const RocPoint &p : points) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0.0) hull.pop_back();
    hull.push_back(p);
  }
  return hull;
}

double EqualErrorRate(std::span<const Trial> trials) {
  const std::vector<RocPoint> hull = RocConvexHull(trials);
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    const RocPoint &a = hull[k], &b = hull[k + 1];
    const double da = a.far - a.frr, db = b.far - b.frr;
    if (da <= 0.0 && db >= 0.0) {
      if (da == db) return a.far;
      const double t = -da / (db - da);
      return std::clamp(a.far + t * (b.far - a.far), 0.0, 1.0);
    }
  }
  // Unreachable: the hull starts at (0, 1) and ends at (1, 0).
  throw NumericalError("EER: ROC hull never crosses FAR = FRR");
}

double Accuracy(std::span<const std::string> pred, std::span<const std::string> truth) {
  RNTM_REQUIRE(pred.size() == truth.size(),
               "Accuracy: " << pred.size() << " predictions for " << truth.size() << " labels");
  RNTM_REQUIRE(!pred.empty(), "Accuracy: empty input");
  size_t hits = 0;
  for (size_t i = 0; i < pred.size(); ++i) hits += pred[i] == truth[i];
  return static_cast<double>(hits) / pred.size();
}

}  // namespace rntm
