// emotion/emotion-tags.h

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

#ifndef RNTM_EMOTION_EMOTION_TAGS_H_
#define RNTM_EMOTION_EMOTION_TAGS_H_

#include <span>
#include <string>
#include <vector>

#include "transducer/vocab.h"

namespace rntm {

/// Emotion labels are their upper-case names ("HAPPY"); in token streams and
/// text each appears as a tag symbol "<HAPPY>".
using EmotionLabel = std::string;

/// The four classes used by default, neutral first.
const std::vector<EmotionLabel> &DefaultEmotions();
inline constexpr const char *kNeutral = "NEUTRAL";

std::string EmotionTag(const EmotionLabel &label);
/// True for strings of the form "<NAME>".
bool IsTagSymbol(const std::string &symbol);
/// "<HAPPY>" -> "HAPPY"; throws ContractError for non-tag strings.
EmotionLabel LabelOfTag(const std::string &tag);

/// Appends one tag symbol per emotion after the existing symbols. The blank
/// and every existing id are unchanged. Throws ContractError if a tag is
/// already present or a label repeats.
Vocab ExtendVocabWithEmotions(const Vocab &base, const std::vector<EmotionLabel> &emotions);

/// `tokens` followed by the tag of `label`. Throws ContractError if tokens
/// already hold a tag or the label has no tag in the vocabulary.
std::vector<int> AugmentTarget(std::span<const int> tokens, const EmotionLabel &label,
                               const Vocab &vocab);

/// Emotion of the last tag in `decoded`, or `neutral` when there is none.
EmotionLabel ExtractEmotion(std::span<const int> decoded, const Vocab &vocab,
                            const EmotionLabel &neutral = kNeutral);

/// `decoded` without its tag ids, order preserved.
std::vector<int> StripTags(std::span<const int> decoded, const Vocab &vocab);

}  // namespace rntm

#endif  // RNTM_EMOTION_EMOTION_TAGS_H_
