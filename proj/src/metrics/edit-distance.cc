// metrics/edit-distance.cc

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

#include "metrics/edit-distance.h"

#include <sstream>

namespace rntm {

std::vector<std::string> SplitWords(const std::string &text) {
  std::istringstream in(text);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

ErrorCounts WordErrors(const std::string &ref, const std::string &hyp) {
  const auto r = SplitWords(ref), h = SplitWords(hyp);
  RNTM_REQUIRE(!r.empty(), "WER: reference has no words");
  return Align(std::span<const std::string>(r), std::span<const std::string>(h));
}

ErrorCounts CharErrors(const std::string &ref, const std::string &hyp) {
  RNTM_REQUIRE(!ref.empty(), "CER: empty reference");
  return Align(std::span<const char>(ref), std::span<const char>(hyp));
}

}  // namespace rntm
