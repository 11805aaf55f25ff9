// synth/dataset.cc

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

#include "synth/dataset.h"

#include "base/binary-io.h"
#include "base/rntm-common.h"

namespace rntm {

namespace {
constexpr char kMagic[4] = {'S', 'Y', 'N', 'C'};
}

std::string SerializeDataset(const std::vector<FeatureSequence> &utts) {
  ByteWriter w;
  w.PutBytes(std::string_view(kMagic, 4));
  w.PutU32(kSyncVersion);
  w.PutU32(static_cast<uint32_t>(utts.size()));
  for (const auto &u : utts) {
    w.PutString(u.utt_id);
    const Matrix &f = u.features.frames();
    w.PutU32(static_cast<uint32_t>(f.rows()));
    w.PutU32(static_cast<uint32_t>(f.cols()));
    for (int t = 0; t < f.rows(); ++t)
      for (int j = 0; j < f.cols(); ++j) w.PutF32(static_cast<float>(f(t, j)));
    w.PutU32(static_cast<uint32_t>(u.transcript.size()));
    for (int id : u.transcript) w.PutU32(static_cast<uint32_t>(id));
    w.PutU32(static_cast<uint32_t>(u.emotion));
    w.PutU32(static_cast<uint32_t>(u.language));
  }
  return w.Release();
}

std::vector<FeatureSequence> ParseDataset(const std::string &bytes, const std::string &what) {
  ByteReader r(bytes, what);
  RNTM_REQUIRE(bytes.size() >= 4 && bytes.compare(0, 4, kMagic, 4) == 0,
               what << ": not a SYNC dataset file");
  r.GetBytes(4);
  const uint32_t version = r.GetU32();
  RNTM_REQUIRE(version == kSyncVersion, what << ": unsupported dataset version " << version);
  const uint32_t n = r.GetU32();
  std::vector<FeatureSequence> utts;
  utts.reserve(n);
  for (uint32_t i = 0; i < n; ++i) {
    FeatureSequence u;
    u.utt_id = r.GetString();
    const uint32_t T = r.GetU32(), d = r.GetU32();
    RNTM_REQUIRE(T >= 1 && d >= 1, what << ": utterance " << u.utt_id << " has an empty matrix");
    RNTM_REQUIRE(static_cast<uint64_t>(T) * d * 4 <= r.Remaining(),
                 what << ": truncated frames for " << u.utt_id);
    Matrix m(T, d);
    for (uint32_t t = 0; t < T; ++t)
      for (uint32_t j = 0; j < d; ++j) m(t, j) = r.GetF32();
    u.features = SequenceTensor(std::move(m));
    const uint32_t U = r.GetU32();
    RNTM_REQUIRE(static_cast<uint64_t>(U) * 4 <= r.Remaining(),
                 what << ": truncated transcript for " << u.utt_id);
    u.transcript.resize(U);
    for (auto &id : u.transcript) id = static_cast<int>(r.GetU32());
    u.emotion = static_cast<int>(r.GetU32());
    u.language = static_cast<int>(r.GetU32());
    utts.push_back(std::move(u));
  }
  RNTM_REQUIRE(r.AtEnd(), what << ": trailing bytes after " << n << " utterances");
  return utts;
}

void WriteDataset(const std::string &path, const std::vector<FeatureSequence> &utts) {
  WriteFileBytes(path, SerializeDataset(utts));
}

std::vector<FeatureSequence> ReadDataset(const std::string &path) {
  return ParseDataset(ReadFileBytes(path), path);
}

const CorpusManifest::Split &CorpusManifest::Find(const std::string &name) const {
  for (const auto &s : splits)
    if (s.name == name) return s;
  throw ContractError("corpus manifest has no split '" + name + "'");
}

nlohmann::json CorpusManifest::ToJson() const {
  nlohmann::json sp = nlohmann::json::array();
  for (const auto &s : splits)
    sp.push_back({{"name", s.name},
                  {"file", s.file},
                  {"count", s.count},
                  {"duration_frames", s.duration_frames},
                  {"checksum", s.checksum}});
  return {{"format", "SYNC"},      {"version", kSyncVersion}, {"symbols", symbols},
          {"languages", languages}, {"emotions", emotions},   {"feature_dim", feature_dim},
          {"seed", seed},           {"splits", sp}};
}

CorpusManifest CorpusManifest::FromJson(const nlohmann::json &j) {
  CorpusManifest m;
  try {
    RNTM_REQUIRE(j.at("format").get<std::string>() == "SYNC", "manifest: unknown format");
    m.symbols = j.at("symbols").get<std::vector<std::string>>();
    m.languages = j.at("languages").get<std::vector<std::string>>();
    m.emotions = j.at("emotions").get<std::vector<std::string>>();
    m.feature_dim = j.at("feature_dim").get<int>();
    m.seed = j.at("seed").get<uint64_t>();
    for (const auto &s : j.at("splits")) {
      m.splits.push_back({s.at("name").get<std::string>(), s.at("file").get<std::string>(),
                          s.at("count").get<int>(), s.at("duration_frames").get<int>(),
                          s.at("checksum").get<std::string>()});
    }
  } catch (const nlohmann::json::exception &e) {
    throw ContractError(std::string("manifest: ") + e.what());
  }
  return m;
}

std::string TranscriptText(const std::vector<std::string> &symbols,
                           const std::vector<int> &transcript) {
  std::string out;
  for (int id : transcript) {
    RNTM_REQUIRE(id >= 0 && id < static_cast<int>(symbols.size()),
                 "transcript id " << id << " outside the symbol list");
    out += symbols[id];
  }
  return out;
}

}  // namespace rntm
