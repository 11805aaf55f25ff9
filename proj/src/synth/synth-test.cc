// synth/synth-test.cc

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
#include <filesystem>
#include <limits>
#include <map>
#include <set>

#include "base/binary-io.h"
#include "base/rntm-common.h"
#include "doctest.h"
#include "synth/generator.h"

namespace rntm {
namespace {

CorpusConfig SmallConfig() {
  CorpusConfig c;
  c.train = 36;
  c.dev = 12;
  c.test = 24;
  return c;
}

std::string TempDir(const std::string &name) {
  const auto p = std::filesystem::temp_directory_path() / ("rntm-synth-test-" + name);
  std::filesystem::remove_all(p);
  return p.string();
}

// One language holding a single letter, no noise, neutral only.
CorpusSpec SingleSymbolSpec() {
  CorpusSpec s;
  s.symbols = {" ", "A"};
  s.feature_dim = 3;
  s.separator_mean = Vector::Zero(3);
  LanguageSpec l;
  l.name = "L0";
  l.inventory = {1};
  l.bigram = Matrix::Ones(2, 1);
  l.means.resize(1, 3);
  l.means << 0.5, -1.25, 3.0;
  s.languages.push_back(l);
  s.emotions.push_back({"NEUTRAL", Vector::Zero(3), 1.0});
  s.noise_std = 0.0;
  s.min_frames_per_symbol = 2;
  s.max_frames_per_symbol = 4;
  s.min_words = s.max_words = 1;
  s.min_word_length = 1;
  s.max_word_length = 3;
  s.train = 5;
  s.seed = 3;
  return s;
}

}  // namespace

TEST_CASE("corpus spec: defaults") {
  const CorpusSpec s = BuildCorpusSpec(CorpusConfig{}, 1);
  CHECK(s.languages.size() == 3);
  CHECK(s.emotions.size() == 4);
  CHECK(s.symbols.size() == 1 + 16);
  CHECK(s.feature_dim == 16);
  for (const auto &l : s.languages) {
    CHECK(l.inventory.size() == 8);
    for (int r = 0; r < l.bigram.rows(); ++r) CHECK(std::abs(l.bigram.row(r).sum() - 1.0) < 1e-12);
  }
  // Neighbouring languages share half of their letters; the outer two none.
  auto shared = [&](int a, int b) {
    std::set<int> sa(s.languages[a].inventory.begin(), s.languages[a].inventory.end());
    int n = 0;
    for (int id : s.languages[b].inventory) n += sa.count(id);
    return n;
  };
  CHECK(shared(0, 1) == 4);
  CHECK(shared(1, 2) == 4);
  CHECK(shared(0, 2) == 0);
  CHECK(s.emotions[0].offset.isZero(0.0));
  for (int e = 1; e < 4; ++e) {
    CHECK(s.emotions[e].offset.norm() == doctest::Approx(2.0).epsilon(1e-6));
    for (int f = 1; f < e; ++f) CHECK(std::abs(s.emotions[e].offset.dot(s.emotions[f].offset)) < 1e-5);
  }
}

TEST_CASE("corpus spec: validation names the field") {
  CorpusSpec s = BuildCorpusSpec(SmallConfig(), 2);
  auto expect_error = [](const CorpusSpec &bad, const std::string &needle) {
    try {
      bad.Validate();
      FAIL("expected ContractError mentioning " << needle);
    } catch (const ContractError &e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  {
    CorpusSpec bad = s;
    bad.languages[1].bigram(2, 0) += 0.5;
    expect_error(bad, "L1.bigram");
  }
  {
    CorpusSpec bad = s;
    bad.noise_std = -1.0;
    expect_error(bad, "noise_std");
  }
  {
    CorpusSpec bad = s;
    bad.durations = {30, 10};
    expect_error(bad, "durations");
  }
  {
    CorpusSpec bad = s;
    bad.durations = {2};
    expect_error(bad, "durations");
  }
  {
    CorpusSpec bad = s;
    bad.emotions[2].offset = Vector::Zero(3);
    expect_error(bad, "ANGRY.offset");
  }
  CorpusConfig cfg;
  cfg.duration_multipliers = {1.0};
  CHECK_THROWS_AS(BuildCorpusSpec(cfg, 1), ContractError);
  cfg = CorpusConfig{};
  cfg.num_languages = 6;
  CHECK_THROWS_AS(BuildCorpusSpec(cfg, 1), ContractError);
}

TEST_CASE("corpus config: strict keys") {
  const auto j = nlohmann::json::parse(R"({"num_languages": 2, "frames_per_symbol": [2, 3]})");
  const CorpusConfig c = CorpusConfig::FromConfig(ConfigSection(j, "corpus"));
  CHECK(c.num_languages == 2);
  CHECK(c.min_frames_per_symbol == 2);
  CHECK(c.max_frames_per_symbol == 3);
  const auto bad = nlohmann::json::parse(R"({"num_langs": 2})");
  try {
    CorpusConfig::FromConfig(ConfigSection(bad, "corpus"));
    FAIL("expected unknown-key error");
  } catch (const ContractError &e) {
    CHECK(std::string(e.what()).find("corpus.num_langs") != std::string::npos);
  }
  const auto wrong = nlohmann::json::parse(R"({"train": 1.5})");
  CHECK_THROWS_AS(CorpusConfig::FromConfig(ConfigSection(wrong, "corpus")), ContractError);
}

TEST_CASE("generator: noise-free single symbol reproduces the mean") {
  const CorpusSpec s = SingleSymbolSpec();
  s.Validate();
  const auto utts = GenerateSplit(s, "train", 5);
  REQUIRE(utts.size() == 5);
  for (const auto &u : utts) {
    for (int t = 0; t < u.features.NumFrames(); ++t)
      CHECK(u.features.frames().row(t) == s.languages[0].means.row(0));
    for (int id : u.transcript) CHECK(id == 1);
    CHECK(u.features.NumFrames() >= 2 * static_cast<int>(u.transcript.size()));
    CHECK(u.features.NumFrames() <= 4 * static_cast<int>(u.transcript.size()));
  }
}

TEST_CASE("generator: deterministic by seed, counts and labels") {
  const CorpusSpec s = BuildCorpusSpec(SmallConfig(), 7);
  const auto a = GenerateSplit(s, "train", s.train), b = GenerateSplit(s, "train", s.train);
  CHECK(SerializeDataset(a) == SerializeDataset(b));
  CHECK(SerializeDataset(GenerateSplit(s, "dev", s.dev)) != SerializeDataset(a));
  const CorpusSpec other = BuildCorpusSpec(SmallConfig(), 8);
  CHECK(SerializeDataset(GenerateSplit(other, "train", other.train)) != SerializeDataset(a));
  CHECK(a.size() == 36);
  std::map<std::pair<int, int>, int> pairs;
  for (const auto &u : a) {
    ++pairs[{u.language, u.emotion}];
    const auto &inv = s.languages[u.language].inventory;
    for (int id : u.transcript)
      CHECK((id == kSeparatorId || std::find(inv.begin(), inv.end(), id) != inv.end()));
    CHECK(u.transcript.front() != kSeparatorId);
    CHECK(u.transcript.back() != kSeparatorId);
  }
  CHECK(pairs.size() == 12);
  for (const auto &[k, n] : pairs) CHECK(n == 3);
}

TEST_CASE("generator: duration sets have exact lengths") {
  CorpusConfig c = SmallConfig();
  c.durations = {10, 100};
  const CorpusSpec s = BuildCorpusSpec(c, 9);
  const auto sets = GenerateDurationTests(s);
  REQUIRE(sets.size() == 2);
  for (size_t k = 0; k < 2; ++k) {
    CHECK(sets[k].size() == 24);
    for (const auto &u : sets[k]) CHECK(u.features.NumFrames() == c.durations[k]);
  }
  CHECK(SerializeDataset(GenerateDurationTests(s)[1]) == SerializeDataset(sets[1]));
  Rng rng(1);
  CHECK_THROWS_AS(GenerateUtterance(s, 0, 0, "x", &rng, 4), ContractError);
}

TEST_CASE("generator: emotions recoverable frame by frame") {
  // Each frame is matched to the nearest (symbol, emotion) template of its
  // language and the utterance takes the majority emotion. With offsets of
  // norm 2 against noise 0.3 this should almost never be wrong.
  CorpusConfig c;
  c.test = 400;
  const CorpusSpec s = BuildCorpusSpec(c, 11);
  const auto test = GenerateSplit(s, "test", c.test);
  const int E = static_cast<int>(s.emotions.size());
  int hits = 0;
  for (const auto &u : test) {
    const LanguageSpec &l = s.languages[u.language];
    std::vector<Vector> symbol_means = {s.separator_mean};
    for (int i = 0; i < l.means.rows(); ++i) symbol_means.push_back(l.means.row(i).transpose());
    std::vector<int> votes(E, 0);
    for (int t = 0; t < u.features.NumFrames(); ++t) {
      const Vector x = u.features.frames().row(t).transpose();
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      for (const auto &m : symbol_means)
        for (int e = 0; e < E; ++e) {
          const double d2 = (x - m - s.emotions[e].offset).squaredNorm();
          if (d2 < best) best = d2, arg = e;
        }
      ++votes[arg];
    }
    hits += std::max_element(votes.begin(), votes.end()) - votes.begin() == u.emotion;
  }
  CHECK(static_cast<double>(hits) / test.size() >= 0.99);
}

TEST_CASE("dataset file: round trip and corruption") {
  const CorpusSpec s = BuildCorpusSpec(SmallConfig(), 12);
  const auto utts = GenerateSplit(s, "test", 5);
  const std::string bytes = SerializeDataset(utts);
  CHECK(bytes.compare(0, 4, "SYNC") == 0);
  CHECK(ParseDataset(bytes, "mem") == utts);
  CHECK_THROWS_AS(ParseDataset(bytes.substr(0, bytes.size() - 3), "mem"), ContractError);
  CHECK_THROWS_AS(ParseDataset(bytes + "x", "mem"), ContractError);
  std::string bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(ParseDataset(bad, "mem"), ContractError);
}

TEST_CASE("corpus directory: manifest, checksums, reproducibility") {
  const CorpusSpec s = BuildCorpusSpec(SmallConfig(), 13);
  const std::string d1 = TempDir("a"), d2 = TempDir("b");
  const CorpusManifest m1 = GenerateCorpus(s, d1);
  GenerateCorpus(s, d2);
  for (const auto &split : m1.splits) {
    CHECK(ReadFileBytes(d1 + "/" + split.file) == ReadFileBytes(d2 + "/" + split.file));
  }
  CHECK(ReadFileBytes(d1 + "/manifest.json") == ReadFileBytes(d2 + "/manifest.json"));
  const CorpusManifest m = ReadManifest(d1);
  CHECK(m.symbols == s.symbols);
  CHECK(m.emotions == std::vector<std::string>{"NEUTRAL", "HAPPY", "ANGRY", "SAD"});
  CHECK(LoadSplit(d1, m, "train").size() == 36);
  CHECK(LoadSplit(d1, m, "dev").size() == 12);
  CHECK(LoadSplit(d1, m, "test-dur300").front().features.NumFrames() == 300);
  CHECK_THROWS_AS(LoadSplit(d1, m, "nope"), ContractError);
  // Tampering is caught by the manifest checksum.
  std::string bytes = ReadFileBytes(d1 + "/dev.sync");
  bytes[bytes.size() - 1] ^= 1;
  WriteFileBytes(d1 + "/dev.sync", bytes);
  CHECK_THROWS_AS(LoadSplit(d1, m, "dev"), ContractError);
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d2);
}

}  // namespace rntm
