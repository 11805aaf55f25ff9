// base/json-config.h

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

#ifndef RNTM_BASE_JSON_CONFIG_H_
#define RNTM_BASE_JSON_CONFIG_H_

#include <initializer_list>
#include <string>
#include <type_traits>

#include "base/rntm-common.h"
#include "json.hpp"

namespace rntm {

/// Strict reader for one JSON object of a configuration file. Every access
/// is by key; unknown keys and type mismatches become ContractErrors that
/// name the offending field by its dotted path.
class ConfigSection {
 public:
  ConfigSection(const nlohmann::json &j, std::string path);

  const std::string &path() const { return path_; }
  bool Has(const std::string &key) const { return j_.contains(key); }

  /// Throws if the object holds a key outside `allowed`.
  void AllowOnly(std::initializer_list<const char *> allowed) const;

  template <typename T>
  T Get(const std::string &key) const {
    RNTM_REQUIRE(j_.contains(key), "config: missing field " << Field(key));
    return Convert<T>(key);
  }

  template <typename T>
  T Get(const std::string &key, const T &fallback) const {
    return j_.contains(key) ? Convert<T>(key) : fallback;
  }

  ConfigSection Section(const std::string &key) const;
  std::string Field(const std::string &key) const {
    return path_.empty() ? key : path_ + "." + key;
  }
  const nlohmann::json &json() const { return j_; }

 private:
  template <typename T>
  T Convert(const std::string &key) const {
    const nlohmann::json &v = j_.at(key);
    // nlohmann converts floats to ints silently; keep integer fields exact.
    if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
      RNTM_REQUIRE(v.is_number_integer(), "config: field " << Field(key) << " must be an integer");
    }
    try {
      return v.get<T>();
    } catch (const nlohmann::json::exception &) {
      throw ContractError("config: field " + Field(key) + " has the wrong type");
    }
  }

  const nlohmann::json &j_;
  std::string path_;
};

/// Parses a JSON document; syntax errors become ContractErrors naming `what`.
nlohmann::json ParseJsonText(const std::string &text, const std::string &what);
nlohmann::json ReadJsonFile(const std::string &path);

}  // namespace rntm

#endif  // RNTM_BASE_JSON_CONFIG_H_
