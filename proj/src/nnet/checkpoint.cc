// nnet/checkpoint.cc

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

#include "nnet/checkpoint.h"

#include <vector>

#include "base/binary-io.h"
#include "base/rntm-common.h"

namespace rntm {

namespace {
constexpr std::string_view kMagic = "RNTM";
}

std::string SerializeCheckpoint(const Checkpoint &ckpt) {
  ByteWriter w;
  w.PutBytes(kMagic);
  w.PutU32(kCheckpointVersion);
  w.PutU32(static_cast<uint32_t>(ckpt.params.NumTensors()));
  nlohmann::json frozen = nlohmann::json::array();
  for (const auto &[name, p] : ckpt.params) {
    w.PutString(name);
    w.PutU32(static_cast<uint32_t>(p.shape.size()));
    for (int d : p.shape) w.PutU32(static_cast<uint32_t>(d));
    for (double v : p.value) w.PutF64(v);
    if (p.frozen) frozen.push_back(name);
  }
  nlohmann::json meta = ckpt.metadata;
  meta["frozen"] = std::move(frozen);
  w.PutString(meta.dump());
  return w.Release();
}

Checkpoint ParseCheckpoint(std::string_view bytes, const std::string &what) {
  ByteReader r(bytes, what);
  RNTM_REQUIRE(r.GetBytes(4) == kMagic, what << ": not a checkpoint (bad magic)");
  const uint32_t version = r.GetU32();
  RNTM_REQUIRE(version == kCheckpointVersion,
               what << ": unsupported checkpoint version " << version);
  Checkpoint ckpt;
  const uint32_t count = r.GetU32();
  for (uint32_t k = 0; k < count; ++k) {
    std::string name = r.GetString();
    const uint32_t rank = r.GetU32();
    RNTM_REQUIRE(rank >= 1 && rank <= 8, what << ": bad rank for " << name);
    std::vector<int> shape(rank);
    for (auto &d : shape) d = static_cast<int>(r.GetU32());
    Param &p = ckpt.params.Add(name, shape);
    for (double &v : p.value) v = r.GetF64();
  }
  std::string meta = r.GetString();
  RNTM_REQUIRE(r.AtEnd(), what << ": trailing bytes after metadata");
  try {
    ckpt.metadata = nlohmann::json::parse(meta);
  } catch (const nlohmann::json::exception &e) {
    throw ContractError(what + ": bad metadata: " + e.what());
  }
  RNTM_REQUIRE(ckpt.metadata.is_object(), what << ": metadata is not an object");
  if (ckpt.metadata.contains("frozen")) {
    for (const auto &name : ckpt.metadata["frozen"])
      ckpt.params.Get(name.get<std::string>()).frozen = true;
    ckpt.metadata.erase("frozen");
  }
  return ckpt;
}

void WriteCheckpoint(const std::string &path, const Checkpoint &ckpt) {
  WriteFileBytes(path, SerializeCheckpoint(ckpt));
}

Checkpoint ReadCheckpoint(const std::string &path) {
  return ParseCheckpoint(ReadFileBytes(path), path);
}

}  // namespace rntm
