// transducer/vocab.cc

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

#include "transducer/vocab.h"

#include <algorithm>

#include "base/rntm-common.h"

namespace rntm {

Vocab::Vocab(std::vector<std::string> symbols, int blank_id, std::vector<int> tag_ids)
    : symbols_(std::move(symbols)), blank_id_(blank_id), tag_ids_(std::move(tag_ids)) {
  RNTM_REQUIRE(blank_id_ >= 0 && blank_id_ < Size(),
               "Vocab: blank id " << blank_id_ << " out of range");
  for (int i = 0; i < Size(); ++i) {
    RNTM_REQUIRE(index_.emplace(symbols_[i], i).second,
                 "Vocab: duplicate symbol '" << symbols_[i] << "'");
  }
  std::sort(tag_ids_.begin(), tag_ids_.end());
  for (size_t k = 0; k < tag_ids_.size(); ++k) {
    const int id = tag_ids_[k];
    RNTM_REQUIRE(id >= 0 && id < Size(), "Vocab: tag id " << id << " out of range");
    RNTM_REQUIRE(id != blank_id_, "Vocab: blank cannot be an emotion tag");
    RNTM_REQUIRE(k == 0 || tag_ids_[k - 1] != id, "Vocab: repeated tag id " << id);
  }
}

const std::string &Vocab::Symbol(int id) const {
  RNTM_REQUIRE(id >= 0 && id < Size(), "Vocab: id " << id << " out of range");
  return symbols_[id];
}

int Vocab::IdOf(const std::string &symbol) const {
  auto it = index_.find(symbol);
  return it == index_.end() ? -1 : it->second;
}

bool Vocab::IsTag(int id) const {
  return std::binary_search(tag_ids_.begin(), tag_ids_.end(), id);
}

std::vector<int> Vocab::ToIds(const std::vector<std::string> &symbols) const {
  std::vector<int> ids;
  ids.reserve(symbols.size());
  for (const auto &s : symbols) {
    const int id = IdOf(s);
    RNTM_REQUIRE(id >= 0, "Vocab: unknown symbol '" << s << "'");
    ids.push_back(id);
  }
  return ids;
}

std::string Vocab::Render(std::span<const int> ids) const {
  std::string out;
  for (int id : ids) {
    if (IsTag(id) && !out.empty() && out.back() != ' ') out.push_back(' ');
    out += Symbol(id);
  }
  return out;
}

nlohmann::json Vocab::ToJson() const {
  return {{"symbols", symbols_}, {"blank_id", blank_id_}, {"tag_ids", tag_ids_}};
}

Vocab Vocab::FromJson(const nlohmann::json &j) {
  try {
    return Vocab(j.at("symbols").get<std::vector<std::string>>(), j.at("blank_id").get<int>(),
                 j.at("tag_ids").get<std::vector<int>>());
  } catch (const nlohmann::json::exception &e) {
    throw ContractError(std::string("Vocab: malformed description: ") + e.what());
  }
}

}  // namespace rntm
