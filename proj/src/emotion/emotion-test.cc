// emotion/emotion-test.cc

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

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "base/rntm-common.h"
#include "doctest.h"
#include "emotion/emotion-tags.h"
#include "emotion/model-selection.h"
#include "nnet/rng.h"

namespace rntm {
namespace {

Vocab EightChars() { return Vocab({"<blank>", "A", "B", "C", "D", "E", "F", "G", "H"}, 0); }

Vocab Letters() {
  std::vector<std::string> s = {"<blank>", " "};
  for (char c = 'A'; c <= 'Z'; ++c) s.emplace_back(1, c);
  return ExtendVocabWithEmotions(Vocab(s, 0), DefaultEmotions());
}

std::vector<int> Spell(const Vocab &v, const std::string &text) {
  std::vector<std::string> chars;
  for (char c : text) chars.emplace_back(1, c);
  return v.ToIds(chars);
}

// Random tag-free token list over the non-blank, non-tag ids of `v`.
std::vector<int> RandomTokens(const Vocab &v, Rng *rng) {
  std::vector<int> plain;
  for (int i = 0; i < v.Size(); ++i)
    if (i != v.blank_id() && !v.IsTag(i)) plain.push_back(i);
  std::vector<int> out(rng->UniformInt(0, 12));
  for (int &x : out) x = plain[rng->UniformInt(0, plain.size() - 1)];
  return out;
}

}  // namespace

TEST_CASE("extend vocab: four tags after eight characters and a blank") {
  const Vocab v = ExtendVocabWithEmotions(EightChars(), DefaultEmotions());
  CHECK(v.Size() == 13);
  CHECK(v.tag_ids() == std::vector<int>{9, 10, 11, 12});
  CHECK(v.blank_id() == 0);
  CHECK(v.Symbol(9) == "<NEUTRAL>");
  CHECK(v.Symbol(10) == "<HAPPY>");
  CHECK(v.Symbol(11) == "<ANGRY>");
  CHECK(v.Symbol(12) == "<SAD>");
  for (int i = 0; i < 9; ++i) CHECK(v.Symbol(i) == EightChars().Symbol(i));
}

TEST_CASE("extend vocab: empty list and repeated tags") {
  CHECK(ExtendVocabWithEmotions(EightChars(), {}) == EightChars());
  const Vocab once = ExtendVocabWithEmotions(EightChars(), DefaultEmotions());
  CHECK_THROWS_AS(ExtendVocabWithEmotions(once, DefaultEmotions()), ContractError);
  CHECK_THROWS_AS(ExtendVocabWithEmotions(EightChars(), {"SAD", "SAD"}), ContractError);
}

TEST_CASE("augment target: tag goes last") {
  const Vocab v = Letters();
  const auto x = Spell(v, "I FEEL HAPPY TODAY");
  const auto y = AugmentTarget(x, "HAPPY", v);
  CHECK(v.Render(y) == "I FEEL HAPPY TODAY <HAPPY>");
  CHECK(AugmentTarget(std::vector<int>{}, "SAD", v) == std::vector<int>{v.IdOf("<SAD>")});
  CHECK(AugmentTarget(x, "NEUTRAL", v).back() == v.IdOf("<NEUTRAL>"));
  CHECK_THROWS_AS(AugmentTarget(x, "BORED", v), ContractError);
  CHECK_THROWS_AS(AugmentTarget(y, "SAD", v), ContractError);
}

TEST_CASE("extract emotion: last tag wins, neutral fallback") {
  const Vocab v = Letters();
  const int a = v.IdOf("A"), b = v.IdOf("B");
  CHECK(ExtractEmotion(std::vector<int>{a, v.IdOf("<SAD>"), b, v.IdOf("<HAPPY>")}, v) == "HAPPY");
  CHECK(ExtractEmotion(std::vector<int>{a, b}, v) == "NEUTRAL");
  CHECK(ExtractEmotion(std::vector<int>{}, v) == "NEUTRAL");
  CHECK(ExtractEmotion(std::vector<int>{a}, v, "CALM") == "CALM");
}

TEST_CASE("strip tags") {
  const Vocab v = Letters();
  const int a = v.IdOf("A"), b = v.IdOf("B"), h = v.IdOf("<HAPPY>"), s = v.IdOf("<SAD>");
  CHECK(StripTags(std::vector<int>{a, h, b}, v) == std::vector<int>{a, b});
  CHECK(StripTags(std::vector<int>{a, b, a}, v) == std::vector<int>{a, b, a});
  CHECK(StripTags(std::vector<int>{h, s, h}, v).empty());
}

TEST_CASE("emotion tags: round-trip properties") {
  const Vocab v = Letters();
  Rng rng(77);
  for (int rep = 0; rep < 500; ++rep) {
    const auto x = RandomTokens(v, &rng);
    const EmotionLabel e = DefaultEmotions()[rng.UniformInt(0, 3)];
    const auto y = AugmentTarget(x, e, v);
    CHECK(y.size() == x.size() + 1);
    CHECK(ExtractEmotion(y, v) == e);
    CHECK(StripTags(y, v) == x);
    // Anything may precede the final tag, including other tags.
    std::vector<int> prefix = RandomTokens(v, &rng);
    if (!prefix.empty()) prefix[rng.UniformInt(0, prefix.size() - 1)] = v.tag_ids()[rng.UniformInt(0, 3)];
    prefix.insert(prefix.end(), y.begin(), y.end());
    CHECK(ExtractEmotion(prefix, v) == e);
  }
}

TEST_CASE("select best model") {
  TrainingHistory h;
  CHECK_THROWS_AS(SelectBestModel(h), ContractError);
  h.Add({1, 0.4, "e1"});
  CHECK(SelectBestModel(h) == "e1");

  TrainingHistory ties;
  ties.Add({1, 0.5, "e1"});
  ties.Add({2, 0.7, "e2"});
  ties.Add({3, 0.7, "e3"});
  CHECK(SelectBestModel(ties) == "e2");

  TrainingHistory drop;
  drop.Add({1, 0.9, "e1"});
  drop.Add({2, 0.2, "e2"});
  CHECK(SelectBestModel(drop) == "e1");

  CHECK_THROWS_AS(drop.Add({2, 0.5, "again"}), ContractError);
  CHECK_THROWS_AS(drop.Add({3, 1.5, "bad"}), ContractError);
}

TEST_CASE("early stopping after patience epochs without improvement") {
  TrainingHistory h;
  const std::vector<double> acc = {0.3, 0.5, 0.5, 0.4, 0.45, 0.5, 0.49};
  std::vector<bool> stop;
  for (size_t i = 0; i < acc.size(); ++i) {
    h.Add({static_cast<int>(i + 1), acc[i], "e" + std::to_string(i + 1)});
    stop.push_back(h.ShouldStop(5));
  }
  // Best is epoch 2; five later epochs without a strict gain end training.
  CHECK(stop == std::vector<bool>{false, false, false, false, false, false, true});
  CHECK(SelectBestModel(h) == "e2");

  TrainingHistory rising;
  for (int e = 1; e <= 20; ++e) {
    rising.Add({e, e / 20.0, ""});
    CHECK_FALSE(rising.ShouldStop(5));
  }
}

TEST_CASE("stratified split keeps class proportions") {
  std::vector<std::string> labels;
  const std::map<std::string, int> counts = {{"NEUTRAL", 40}, {"HAPPY", 30}, {"ANGRY", 20}, {"SAD", 10}};
  for (const auto &[l, n] : counts)
    for (int i = 0; i < n; ++i) labels.push_back(l);
  Rng shuffle(5);
  shuffle.Shuffle(&labels);
  const DevSplit s = StratifiedSplit(labels, 0.1, 9);
  CHECK(s.train.size() + s.dev.size() == labels.size());
  std::map<std::string, int> dev_counts;
  for (int i : s.dev) ++dev_counts[labels[i]];
  for (const auto &[l, n] : counts) CHECK(dev_counts[l] == n / 10);
  std::set<int> all(s.train.begin(), s.train.end());
  for (int i : s.dev) CHECK(all.insert(i).second);
  CHECK(std::is_sorted(s.dev.begin(), s.dev.end()));

  const DevSplit again = StratifiedSplit(labels, 0.1, 9);
  CHECK(again.dev == s.dev);
  CHECK(StratifiedSplit(labels, 0.1, 10).dev != s.dev);
}

}  // namespace rntm
