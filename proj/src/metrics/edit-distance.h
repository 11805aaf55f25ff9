// metrics/edit-distance.h

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

#ifndef RNTM_METRICS_EDIT_DISTANCE_H_
#define RNTM_METRICS_EDIT_DISTANCE_H_

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "base/rntm-common.h"

namespace rntm {

struct ErrorCounts {
  int substitutions = 0;
  int insertions = 0;
  int deletions = 0;
  int reference_length = 0;

  int Errors() const { return substitutions + insertions + deletions; }
  /// Errors / reference_length; may exceed 1. Throws on an empty reference.
  double Rate() const {
    RNTM_REQUIRE(reference_length > 0, "error rate of an empty reference");
    return static_cast<double>(Errors()) / reference_length;
  }
  ErrorCounts &operator+=(const ErrorCounts &o) {
    substitutions += o.substitutions;
    insertions += o.insertions;
    deletions += o.deletions;
    reference_length += o.reference_length;
    return *this;
  }
  bool operator==(const ErrorCounts &) const = default;
};

/// Levenshtein alignment of `ref` to `hyp` with unit costs. The breakdown
/// comes from one optimal alignment, traced back from the end preferring a
/// match/substitution, then a deletion (ref token dropped), then an insertion.
template <typename T>
ErrorCounts Align(std::span<const T> ref, std::span<const T> hyp) {
  const size_t n = ref.size(), m = hyp.size();
  std::vector<int> d((n + 1) * (m + 1));
  auto at = [m](size_t i, size_t j) { return i * (m + 1) + j; };
  for (size_t i = 0; i <= n; ++i) d[at(i, 0)] = static_cast<int>(i);
  for (size_t j = 0; j <= m; ++j) d[at(0, j)] = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      const int sub = d[at(i - 1, j - 1)] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      d[at(i, j)] = std::min({sub, d[at(i - 1, j)] + 1, d[at(i, j - 1)] + 1});
    }
  }
  ErrorCounts c;
  c.reference_length = static_cast<int>(n);
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (d[at(i, j)] == d[at(i - 1, j - 1)] + (same ? 0 : 1)) {
        if (!same) ++c.substitutions;
        --i, --j;
        continue;
      }
    }
    if (i > 0 && d[at(i, j)] == d[at(i - 1, j)] + 1) {
      ++c.deletions;
      --i;
    } else {
      ++c.insertions;
      --j;
    }
  }
  return c;
}

template <typename T>
int EditDistance(std::span<const T> a, std::span<const T> b) {
  return Align(a, b).Errors();
}

inline int EditDistance(const std::string &a, const std::string &b) {
  return EditDistance(std::span<const char>(a), std::span<const char>(b));
}

/// Whitespace-separated words.
std::vector<std::string> SplitWords(const std::string &text);

/// Word-level counts; throws ContractError if `ref` has no words.
ErrorCounts WordErrors(const std::string &ref, const std::string &hyp);
/// Character-level counts, spaces included; throws if `ref` is empty.
ErrorCounts CharErrors(const std::string &ref, const std::string &hyp);

inline double Wer(const std::string &ref, const std::string &hyp) {
  return WordErrors(ref, hyp).Rate();
}
inline double Cer(const std::string &ref, const std::string &hyp) {
  return CharErrors(ref, hyp).Rate();
}

}  // namespace rntm

#endif  // RNTM_METRICS_EDIT_DISTANCE_H_
