// base/json-config.cc

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

#include "base/json-config.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rntm {

ConfigSection::ConfigSection(const nlohmann::json &j, std::string path)
    : j_(j), path_(std::move(path)) {
  RNTM_REQUIRE(j_.is_object(),
               "config: " << (path_.empty() ? std::string("top level") : path_)
                          << " must be a JSON object");
}

void ConfigSection::AllowOnly(std::initializer_list<const char *> allowed) const {
  for (const auto &item : j_.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char *k) { return item.key() == k; });
    RNTM_REQUIRE(known, "config: unknown field " << Field(item.key()));
  }
}

ConfigSection ConfigSection::Section(const std::string &key) const {
  RNTM_REQUIRE(j_.contains(key), "config: missing section " << Field(key));
  return ConfigSection(j_.at(key), Field(key));
}

nlohmann::json ParseJsonText(const std::string &text, const std::string &what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ContractError(what + ": invalid JSON: " + e.what());
  }
}

nlohmann::json ReadJsonFile(const std::string &path) {
  std::ifstream in(path);
  RNTM_REQUIRE(in.good(), "cannot open " << path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseJsonText(ss.str(), path);
}

}  // namespace rntm
