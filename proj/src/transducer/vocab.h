// transducer/vocab.h

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

#ifndef RNTM_TRANSDUCER_VOCAB_H_
#define RNTM_TRANSDUCER_VOCAB_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace rntm {

/// Output symbol inventory of a transducer: character symbols, the blank,
/// and optionally emotion tags. Ids are positions in `symbols`.
class Vocab {
 public:
  Vocab() = default;
  /// Throws ContractError if blank_id is out of range, symbols repeat, or a
  /// tag id is invalid or equal to the blank.
  Vocab(std::vector<std::string> symbols, int blank_id, std::vector<int> tag_ids = {});

  int Size() const { return static_cast<int>(symbols_.size()); }
  int blank_id() const { return blank_id_; }
  const std::vector<std::string> &symbols() const { return symbols_; }
  const std::vector<int> &tag_ids() const { return tag_ids_; }

  const std::string &Symbol(int id) const;
  /// -1 when absent.
  int IdOf(const std::string &symbol) const;
  bool Contains(const std::string &symbol) const { return IdOf(symbol) >= 0; }
  bool IsTag(int id) const;

  /// Maps symbol strings to ids; throws on unknown symbols.
  std::vector<int> ToIds(const std::vector<std::string> &symbols) const;
  /// Concatenates symbol strings. Tags are set off by one space, so a tagged
  /// decode reads like "ABC DE <HAPPY>".
  std::string Render(std::span<const int> ids) const;

  nlohmann::json ToJson() const;
  static Vocab FromJson(const nlohmann::json &j);

  bool operator==(const Vocab &other) const {
    return symbols_ == other.symbols_ && blank_id_ == other.blank_id_ &&
           tag_ids_ == other.tag_ids_;
  }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, int> index_;
  int blank_id_ = 0;
  std::vector<int> tag_ids_;
};

}  // namespace rntm

#endif  // RNTM_TRANSDUCER_VOCAB_H_
