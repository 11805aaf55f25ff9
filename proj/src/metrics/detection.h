// metrics/detection.h

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

#ifndef RNTM_METRICS_DETECTION_H_
#define RNTM_METRICS_DETECTION_H_

#include <span>
#include <string>
#include <vector>

namespace rntm {

struct Trial {
  double score = 0.0;
  bool is_target = false;
};

/// Operating point: false-acceptance and false-rejection rates of the rule
/// "accept when score >= threshold".
struct RocPoint {
  double far = 0.0;
  double frr = 0.0;
};

/// ROC points for every distinct threshold, from accept-nothing (FAR 0,
/// FRR 1) to accept-everything (FAR 1, FRR 0). Tied scores move together.
std::vector<RocPoint> RocPoints(std::span<const Trial> trials);

/// Lower-left convex hull of the ROC points, ordered by increasing FAR.
std::vector<RocPoint> RocConvexHull(std::span<const Trial> trials);

/// Equal error rate: the FAR = FRR crossing of the ROC convex hull, found by
/// linear interpolation on the hull segment where FAR - FRR changes sign.
/// Throws ContractError without at least one target and one non-target, or
/// on a non-finite score.
double EqualErrorRate(std::span<const Trial> trials);

/// Fraction of positions where pred equals truth. Throws ContractError on
/// empty or unequal-length input.
double Accuracy(std::span<const std::string> pred, std::span<const std::string> truth);

}  // namespace rntm

#endif  // RNTM_METRICS_DETECTION_H_
