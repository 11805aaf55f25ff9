// synth/generator.cc

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

#include "synth/generator.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "base/binary-io.h"
#include "base/json-config.h"
#include "base/rntm-common.h"

namespace rntm {

namespace {

std::vector<double> RowWeights(const Matrix &m, int row) {
  return std::vector<double>(m.row(row).data(), m.row(row).data() + m.cols());
}

std::string UttId(const std::string &split, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "-%05d", index);
  return split + buf;
}

uint64_t SplitStream(const std::string &name) { return Fnv1a64(name); }

}  // namespace

FeatureSequence GenerateUtterance(const CorpusSpec &spec, int language, int emotion,
                                  const std::string &utt_id, Rng *rng, int num_frames) {
  RNTM_REQUIRE(language >= 0 && language < static_cast<int>(spec.languages.size()),
               "GenerateUtterance: language " << language << " out of range");
  RNTM_REQUIRE(emotion >= 0 && emotion < static_cast<int>(spec.emotions.size()),
               "GenerateUtterance: emotion " << emotion << " out of range");
  const LanguageSpec &lang = spec.languages[language];
  const EmotionSpec &emo = spec.emotions[emotion];
  const int d = spec.feature_dim;

  // (symbol id, mean row) per emitted symbol, then its frame count.
  std::vector<int> symbols;
  std::vector<Vector> means;
  std::vector<int> lengths;
  int total = 0;
  auto emit = [&](int symbol, const Vector &mean) {
    const int base = static_cast<int>(rng->UniformInt(spec.min_frames_per_symbol, spec.max_frames_per_symbol));
    const int n = std::max(1, static_cast<int>(std::lround(base * emo.duration_multiplier)));
    symbols.push_back(symbol);
    means.push_back(mean);
    lengths.push_back(n);
    total += n;
  };
  auto emit_word = [&]() {
    const int len = static_cast<int>(rng->UniformInt(spec.min_word_length, spec.max_word_length));
    int prev = 0;
    for (int k = 0; k < len; ++k) {
      const int idx = static_cast<int>(rng->Categorical(RowWeights(lang.bigram, prev)));
      emit(lang.inventory[idx], lang.means.row(idx).transpose());
      prev = idx + 1;
    }
  };
  if (num_frames <= 0) {
    const int words = static_cast<int>(rng->UniformInt(spec.min_words, spec.max_words));
    for (int w = 0; w < words; ++w) {
      if (w > 0) emit(kSeparatorId, spec.separator_mean);
      emit_word();
    }
  } else {
    RNTM_REQUIRE(num_frames >= spec.max_frames_per_symbol,
                 "GenerateUtterance: " << num_frames << " frames is shorter than one symbol");
    for (int w = 0; total < num_frames; ++w) {
      if (w > 0) emit(kSeparatorId, spec.separator_mean);
      if (total < num_frames) emit_word();
    }
  }
  const int T = num_frames > 0 ? num_frames : total;

  FeatureSequence u;
  u.utt_id = utt_id;
  u.language = language;
  u.emotion = emotion;
  Matrix frames(T, d);
  int t = 0;
  for (size_t s = 0; s < symbols.size() && t < T; ++s) {
    u.transcript.push_back(symbols[s]);
    for (int k = 0; k < lengths[s] && t < T; ++k, ++t) {
      for (int j = 0; j < d; ++j) {
        const double noise = spec.noise_std > 0.0 ? spec.noise_std * rng->Normal() : 0.0;
        frames(t, j) = static_cast<double>(static_cast<float>(means[s][j] + emo.offset[j] + noise));
      }
    }
  }
  u.features = SequenceTensor(std::move(frames));
  return u;
}

std::vector<FeatureSequence> GenerateSplit(const CorpusSpec &spec, const std::string &name,
                                           int count, int num_frames) {
  RNTM_REQUIRE(count >= 0, "GenerateSplit: negative count");
  Rng rng = Rng::Derive(spec.seed, SplitStream(name));
  const int L = static_cast<int>(spec.languages.size());
  const int E = static_cast<int>(spec.emotions.size());
  // Cycle through all (language, emotion) pairs, then shuffle the order.
  std::vector<std::pair<int, int>> labels;
  for (int i = 0; i < count; ++i) labels.emplace_back(i % L, (i / L) % E);
  rng.Shuffle(&labels);
  std::vector<FeatureSequence> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(GenerateUtterance(spec, labels[i].first, labels[i].second, UttId(name, i), &rng,
                                    num_frames));
  return out;
}

std::string DurationSplitName(int frames) { return "test-dur" + std::to_string(frames); }

std::vector<std::vector<FeatureSequence>> GenerateDurationTests(const CorpusSpec &spec) {
  std::vector<std::vector<FeatureSequence>> sets;
  for (int frames : spec.durations)
    sets.push_back(GenerateSplit(spec, DurationSplitName(frames), spec.test, frames));
  return sets;
}

CorpusManifest GenerateCorpus(const CorpusSpec &spec, const std::string &dir) {
  spec.Validate();
  std::filesystem::create_directories(dir);
  CorpusManifest m;
  m.symbols = spec.symbols;
  for (const auto &l : spec.languages) m.languages.push_back(l.name);
  for (const auto &e : spec.emotions) m.emotions.push_back(e.name);
  m.feature_dim = spec.feature_dim;
  m.seed = spec.seed;

  auto write = [&](const std::string &name, const std::vector<FeatureSequence> &utts,
                   int frames) {
    const std::string file = name + ".sync";
    const std::string bytes = SerializeDataset(utts);
    WriteFileBytes((std::filesystem::path(dir) / file).string(), bytes);
    m.splits.push_back({name, file, static_cast<int>(utts.size()), frames, HexU64(Fnv1a64(bytes))});
  };
  write("train", GenerateSplit(spec, "train", spec.train), 0);
  write("dev", GenerateSplit(spec, "dev", spec.dev), 0);
  write("test", GenerateSplit(spec, "test", spec.test), 0);
  for (int frames : spec.durations)
    write(DurationSplitName(frames), GenerateSplit(spec, DurationSplitName(frames), spec.test, frames),
          frames);

  WriteFileBytes((std::filesystem::path(dir) / "spec.json").string(), spec.ToJson().dump(1) + "\n");
  WriteFileBytes((std::filesystem::path(dir) / "manifest.json").string(), m.ToJson().dump(1) + "\n");
  return m;
}

CorpusManifest ReadManifest(const std::string &dir) {
  return CorpusManifest::FromJson(ReadJsonFile((std::filesystem::path(dir) / "manifest.json").string()));
}

std::vector<FeatureSequence> LoadSplit(const std::string &dir, const CorpusManifest &manifest,
                                       const std::string &name) {
  const auto &split = manifest.Find(name);
  const std::string path = (std::filesystem::path(dir) / split.file).string();
  const std::string bytes = ReadFileBytes(path);
  RNTM_REQUIRE(HexU64(Fnv1a64(bytes)) == split.checksum, path << ": checksum does not match manifest");
  auto utts = ParseDataset(bytes, path);
  RNTM_REQUIRE(static_cast<int>(utts.size()) == split.count,
               path << ": holds " << utts.size() << " utterances, manifest says " << split.count);
  for (const auto &u : utts)
    RNTM_REQUIRE(u.features.Dim() == manifest.feature_dim, path << ": frame width mismatch in " << u.utt_id);
  return utts;
}

}  // namespace rntm
