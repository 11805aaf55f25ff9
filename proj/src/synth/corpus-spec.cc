// synth/corpus-spec.cc

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

#include "synth/corpus-spec.h"

#include <cmath>
#include <set>

#include "base/rntm-common.h"
#include "nnet/rng.h"

namespace rntm {

namespace {

// Frames are stored as 32-bit floats; keeping the means on that grid makes
// noise-free frames equal to their mean exactly.
double F32(double v) { return static_cast<double>(static_cast<float>(v)); }

Vector RandomNormal(int d, double scale, Rng *rng) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = F32(scale * rng->Normal());
  return v;
}

nlohmann::json MatrixJson(const Matrix &m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    std::vector<double> row(m.cols());
    for (int c = 0; c < m.cols(); ++c) row[c] = m(r, c);
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> VectorValues(const Vector &v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

CorpusConfig CorpusConfig::FromConfig(const ConfigSection &s) {
  s.AllowOnly({"num_languages", "inventory_size", "overlap", "feature_dim", "noise_std",
               "symbol_scale", "accent_std", "emotions", "emotion_offset",
               "duration_multipliers", "frames_per_symbol", "words_per_utterance", "word_length",
               "train", "dev", "test", "durations"});
  CorpusConfig c;
  c.num_languages = s.Get("num_languages", c.num_languages);
  c.inventory_size = s.Get("inventory_size", c.inventory_size);
  c.overlap = s.Get("overlap", c.overlap);
  c.feature_dim = s.Get("feature_dim", c.feature_dim);
  c.noise_std = s.Get("noise_std", c.noise_std);
  c.symbol_scale = s.Get("symbol_scale", c.symbol_scale);
  c.accent_std = s.Get("accent_std", c.accent_std);
  c.emotions = s.Get("emotions", c.emotions);
  c.emotion_offset = s.Get("emotion_offset", c.emotion_offset);
  c.duration_multipliers = s.Get("duration_multipliers", c.duration_multipliers);
  auto range = [&](const char *key, int *lo, int *hi) {
    if (!s.Has(key)) return;
    const auto v = s.Get<std::vector<int>>(key);
    RNTM_REQUIRE(v.size() == 2, "config: field " << s.Field(key) << " must be [min, max]");
    *lo = v[0];
    *hi = v[1];
  };
  range("frames_per_symbol", &c.min_frames_per_symbol, &c.max_frames_per_symbol);
  range("words_per_utterance", &c.min_words, &c.max_words);
  range("word_length", &c.min_word_length, &c.max_word_length);
  c.train = s.Get("train", c.train);
  c.dev = s.Get("dev", c.dev);
  c.test = s.Get("test", c.test);
  c.durations = s.Get("durations", c.durations);
  return c;
}

nlohmann::json CorpusConfig::ToJson() const {
  return {{"num_languages", num_languages},
          {"inventory_size", inventory_size},
          {"overlap", overlap},
          {"feature_dim", feature_dim},
          {"noise_std", noise_std},
          {"symbol_scale", symbol_scale},
          {"accent_std", accent_std},
          {"emotions", emotions},
          {"emotion_offset", emotion_offset},
          {"duration_multipliers", duration_multipliers},
          {"frames_per_symbol", {min_frames_per_symbol, max_frames_per_symbol}},
          {"words_per_utterance", {min_words, max_words}},
          {"word_length", {min_word_length, max_word_length}},
          {"train", train},
          {"dev", dev},
          {"test", test},
          {"durations", durations}};
}

int CorpusSpec::EmotionIndex(const std::string &name) const {
  for (size_t i = 0; i < emotions.size(); ++i)
    if (emotions[i].name == name) return static_cast<int>(i);
  return -1;
}

int CorpusSpec::LanguageIndex(const std::string &name) const {
  for (size_t i = 0; i < languages.size(); ++i)
    if (languages[i].name == name) return static_cast<int>(i);
  return -1;
}

void CorpusSpec::Validate() const {
  RNTM_REQUIRE(feature_dim >= 1, "corpus spec: feature_dim must be >= 1");
  RNTM_REQUIRE(std::isfinite(noise_std) && noise_std >= 0.0, "corpus spec: noise_std must be >= 0");
  RNTM_REQUIRE(!symbols.empty() && symbols[kSeparatorId] == " ",
               "corpus spec: symbols must start with the separator");
  RNTM_REQUIRE(separator_mean.size() == feature_dim, "corpus spec: separator_mean has wrong width");
  RNTM_REQUIRE(!languages.empty(), "corpus spec: languages is empty");
  RNTM_REQUIRE(!emotions.empty(), "corpus spec: emotions is empty");
  std::set<std::string> names;
  for (const auto &l : languages) {
    RNTM_REQUIRE(names.insert("lang:" + l.name).second, "corpus spec: duplicate language " << l.name);
    const int n = static_cast<int>(l.inventory.size());
    RNTM_REQUIRE(n >= 1, "corpus spec: languages." << l.name << ".inventory is empty");
    for (int id : l.inventory)
      RNTM_REQUIRE(id > kSeparatorId && id < static_cast<int>(symbols.size()),
                   "corpus spec: languages." << l.name << ".inventory has bad id " << id);
    RNTM_REQUIRE(l.bigram.rows() == n + 1 && l.bigram.cols() == n,
                 "corpus spec: languages." << l.name << ".bigram must be " << n + 1 << "x" << n);
    for (int r = 0; r <= n; ++r) {
      RNTM_REQUIRE((l.bigram.row(r).array() >= 0.0).all(),
                   "corpus spec: languages." << l.name << ".bigram has a negative entry");
      RNTM_REQUIRE(std::abs(l.bigram.row(r).sum() - 1.0) < 1e-9,
                   "corpus spec: languages." << l.name << ".bigram row " << r << " does not sum to 1");
    }
    RNTM_REQUIRE(l.means.rows() == n && l.means.cols() == feature_dim,
                 "corpus spec: languages." << l.name << ".means must be " << n << "x" << feature_dim);
    RNTM_REQUIRE(l.means.allFinite(), "corpus spec: languages." << l.name << ".means not finite");
  }
  for (const auto &e : emotions) {
    RNTM_REQUIRE(names.insert("emo:" + e.name).second, "corpus spec: duplicate emotion " << e.name);
    RNTM_REQUIRE(e.offset.size() == feature_dim && e.offset.allFinite(),
                 "corpus spec: emotions." << e.name << ".offset has wrong width or is not finite");
    RNTM_REQUIRE(e.duration_multiplier > 0.0,
                 "corpus spec: emotions." << e.name << ".duration_multiplier must be > 0");
  }
  RNTM_REQUIRE(min_frames_per_symbol >= 1 && min_frames_per_symbol <= max_frames_per_symbol,
               "corpus spec: frames_per_symbol must satisfy 1 <= min <= max");
  RNTM_REQUIRE(min_words >= 1 && min_words <= max_words,
               "corpus spec: words_per_utterance must satisfy 1 <= min <= max");
  RNTM_REQUIRE(min_word_length >= 1 && min_word_length <= max_word_length,
               "corpus spec: word_length must satisfy 1 <= min <= max");
  RNTM_REQUIRE(train >= 0 && dev >= 0 && test >= 0, "corpus spec: split counts must be >= 0");
  for (size_t i = 0; i < durations.size(); ++i) {
    RNTM_REQUIRE(durations[i] >= max_frames_per_symbol,
                 "corpus spec: durations entry " << durations[i]
                                                 << " is shorter than one symbol ("
                                                 << max_frames_per_symbol << " frames)");
    RNTM_REQUIRE(i == 0 || durations[i] > durations[i - 1],
                 "corpus spec: durations must be increasing");
  }
}

nlohmann::json CorpusSpec::ToJson() const {
  nlohmann::json langs = nlohmann::json::array();
  for (const auto &l : languages)
    langs.push_back({{"name", l.name},
                     {"inventory", l.inventory},
                     {"bigram", MatrixJson(l.bigram)},
                     {"means", MatrixJson(l.means)}});
  nlohmann::json emos = nlohmann::json::array();
  for (const auto &e : emotions)
    emos.push_back({{"name", e.name},
                    {"offset", VectorValues(e.offset)},
                    {"duration_multiplier", e.duration_multiplier}});
  return {{"symbols", symbols},
          {"separator_mean", VectorValues(separator_mean)},
          {"languages", langs},
          {"emotions", emos},
          {"feature_dim", feature_dim},
          {"noise_std", noise_std},
          {"frames_per_symbol", {min_frames_per_symbol, max_frames_per_symbol}},
          {"words_per_utterance", {min_words, max_words}},
          {"word_length", {min_word_length, max_word_length}},
          {"splits", {{"train", train}, {"dev", dev}, {"test", test}}},
          {"durations", durations},
          {"seed", seed}};
}

CorpusSpec BuildCorpusSpec(const CorpusConfig &c, uint64_t seed) {
  RNTM_REQUIRE(c.num_languages >= 1, "config: corpus.num_languages must be >= 1");
  RNTM_REQUIRE(c.inventory_size >= 1, "config: corpus.inventory_size must be >= 1");
  RNTM_REQUIRE(c.overlap >= 0.0 && c.overlap < 1.0, "config: corpus.overlap must be in [0, 1)");
  RNTM_REQUIRE(c.feature_dim >= 1, "config: corpus.feature_dim must be >= 1");
  RNTM_REQUIRE(c.symbol_scale > 0.0, "config: corpus.symbol_scale must be > 0");
  RNTM_REQUIRE(c.accent_std >= 0.0, "config: corpus.accent_std must be >= 0");
  RNTM_REQUIRE(c.emotion_offset >= 0.0, "config: corpus.emotion_offset must be >= 0");
  RNTM_REQUIRE(!c.emotions.empty(), "config: corpus.emotions is empty");
  RNTM_REQUIRE(c.duration_multipliers.size() == c.emotions.size(),
               "config: corpus.duration_multipliers needs one entry per emotion");
  const int shared = static_cast<int>(std::lround(c.overlap * c.inventory_size));
  const int step = c.inventory_size - shared;
  RNTM_REQUIRE(step >= 1, "config: corpus.overlap leaves no letters unique to a language");
  const int pool = step * (c.num_languages - 1) + c.inventory_size;
  RNTM_REQUIRE(pool <= 26, "config: corpus needs " << pool << " letters, at most 26 available");
  int non_neutral = 0;
  for (const auto &e : c.emotions) non_neutral += e != "NEUTRAL";
  RNTM_REQUIRE(non_neutral <= c.feature_dim,
               "config: corpus.feature_dim too small for orthogonal emotion offsets");

  CorpusSpec spec;
  spec.seed = seed;
  spec.feature_dim = c.feature_dim;
  spec.noise_std = c.noise_std;
  spec.min_frames_per_symbol = c.min_frames_per_symbol;
  spec.max_frames_per_symbol = c.max_frames_per_symbol;
  spec.min_words = c.min_words;
  spec.max_words = c.max_words;
  spec.min_word_length = c.min_word_length;
  spec.max_word_length = c.max_word_length;
  spec.train = c.train;
  spec.dev = c.dev;
  spec.test = c.test;
  spec.durations = c.durations;

  Rng rng = Rng::Derive(seed, 0x5eed);
  spec.symbols.push_back(" ");
  for (int i = 0; i < pool; ++i) spec.symbols.emplace_back(1, static_cast<char>('A' + i));
  spec.separator_mean = RandomNormal(c.feature_dim, c.symbol_scale, &rng);
  std::vector<Vector> letter_means;
  for (int i = 0; i < pool; ++i) letter_means.push_back(RandomNormal(c.feature_dim, c.symbol_scale, &rng));

  for (int l = 0; l < c.num_languages; ++l) {
    LanguageSpec lang;
    lang.name = "L" + std::to_string(l);
    const int n = c.inventory_size;
    lang.means.resize(n, c.feature_dim);
    for (int k = 0; k < n; ++k) {
      const int letter = l * step + k;
      lang.inventory.push_back(letter + 1);
      for (int j = 0; j < c.feature_dim; ++j)
        lang.means(k, j) = F32(letter_means[letter][j] + c.accent_std * rng.Normal());
    }
    lang.bigram.resize(n + 1, n);
    for (int r = 0; r <= n; ++r) {
      for (int k = 0; k < n; ++k) lang.bigram(r, k) = 0.05 + rng.Uniform();
      lang.bigram.row(r) /= lang.bigram.row(r).sum();
    }
    spec.languages.push_back(std::move(lang));
  }

  // Non-neutral offsets are orthonormalized, then scaled, so every pair of
  // emotions is equally far apart.
  std::vector<Vector> basis;
  for (size_t e = 0; e < c.emotions.size(); ++e) {
    EmotionSpec emo;
    emo.name = c.emotions[e];
    emo.duration_multiplier = c.duration_multipliers[e];
    if (emo.name == "NEUTRAL") {
      emo.offset = Vector::Zero(c.feature_dim);
    } else {
      Vector v;
      do {
        v = RandomNormal(c.feature_dim, 1.0, &rng);
        for (const Vector &b : basis) v -= v.dot(b) * b;
      } while (v.norm() < 1e-6);
      v /= v.norm();
      basis.push_back(v);
      emo.offset = v * c.emotion_offset;
      for (int j = 0; j < c.feature_dim; ++j) emo.offset[j] = F32(emo.offset[j]);
    }
    spec.emotions.push_back(std::move(emo));
  }
  spec.Validate();
  return spec;
}

}  // namespace rntm
