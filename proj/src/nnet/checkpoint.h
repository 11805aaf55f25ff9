// nnet/checkpoint.h

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

#ifndef RNTM_NNET_CHECKPOINT_H_
#define RNTM_NNET_CHECKPOINT_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "nnet/param-store.h"

namespace rntm {

// Checkpoint layout (all integers little-endian):
//
//   "RNTM"  u32 version  u32 tensor_count
//   tensor_count x { u32 name_len, name bytes, u32 rank, rank x u32 dim,
//                    prod(dims) x f64 value }
//   u32 metadata_len, metadata bytes (UTF-8 JSON)
//
// Tensors are written in name order. The metadata object always carries a
// "frozen" array listing the frozen tensor names; callers add anything else
// (model config, vocabulary) under their own keys.

inline constexpr uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  ParamStore params;
  nlohmann::json metadata = nlohmann::json::object();
};

std::string SerializeCheckpoint(const Checkpoint &ckpt);
/// `what` names the source in error messages.
Checkpoint ParseCheckpoint(std::string_view bytes, const std::string &what = "checkpoint");

void WriteCheckpoint(const std::string &path, const Checkpoint &ckpt);
Checkpoint ReadCheckpoint(const std::string &path);

}  // namespace rntm

#endif  // RNTM_NNET_CHECKPOINT_H_
