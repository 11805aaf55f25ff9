// emotion/emotion-tags.cc

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

#include "emotion/emotion-tags.h"

#include <set>

#include "base/rntm-common.h"

namespace rntm {

const std::vector<EmotionLabel> &DefaultEmotions() {
  static const std::vector<EmotionLabel> kDefault = {"NEUTRAL", "HAPPY", "ANGRY", "SAD"};
  return kDefault;
}

std::string EmotionTag(const EmotionLabel &label) {
  RNTM_REQUIRE(!label.empty(), "EmotionTag: empty label");
  return "<" + label + ">";
}

bool IsTagSymbol(const std::string &symbol) {
  return symbol.size() >= 3 && symbol.front() == '<' && symbol.back() == '>';
}

EmotionLabel LabelOfTag(const std::string &tag) {
  RNTM_REQUIRE(IsTagSymbol(tag), "'" << tag << "' is not an emotion tag");
  return tag.substr(1, tag.size() - 2);
}

Vocab ExtendVocabWithEmotions(const Vocab &base, const std::vector<EmotionLabel> &emotions) {
  std::vector<std::string> symbols = base.symbols();
  std::vector<int> tags = base.tag_ids();
  std::set<EmotionLabel> seen;
  for (const auto &e : emotions) {
    RNTM_REQUIRE(seen.insert(e).second, "emotion '" << e << "' listed twice");
    const std::string tag = EmotionTag(e);
    RNTM_REQUIRE(!base.Contains(tag), "vocabulary already holds " << tag);
    tags.push_back(static_cast<int>(symbols.size()));
    symbols.push_back(tag);
  }
  return Vocab(std::move(symbols), base.blank_id(), std::move(tags));
}

std::vector<int> AugmentTarget(std::span<const int> tokens, const EmotionLabel &label,
                               const Vocab &vocab) {
  const int tag = vocab.IdOf(EmotionTag(label));
  RNTM_REQUIRE(tag >= 0 && vocab.IsTag(tag), "no tag for emotion '" << label << "'");
  std::vector<int> out(tokens.begin(), tokens.end());
  for (int id : out) RNTM_REQUIRE(!vocab.IsTag(id), "AugmentTarget: tokens already hold a tag");
  out.push_back(tag);
  return out;
}

EmotionLabel ExtractEmotion(std::span<const int> decoded, const Vocab &vocab,
                            const EmotionLabel &neutral) {
  for (auto it = decoded.rbegin(); it != decoded.rend(); ++it)
    if (vocab.IsTag(*it)) return LabelOfTag(vocab.Symbol(*it));
  return neutral;
}

std::vector<int> StripTags(std::span<const int> decoded, const Vocab &vocab) {
  std::vector<int> out;
  out.reserve(decoded.size());
  for (int id : decoded)
    if (!vocab.IsTag(id)) out.push_back(id);
  return out;
}

}  // namespace rntm
