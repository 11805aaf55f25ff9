// cli/cli.h

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

#ifndef RNTM_CLI_CLI_H_
#define RNTM_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace rntm {

/// Exit codes of the rntm tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;      // bad flags, config or contract errors
inline constexpr int kExitNumerical = 2;  // non-finite loss during training

/// Runs one subcommand; `args` excludes the program name. Progress goes to
/// `out`, the one-line diagnostic of a failure to `err`.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace rntm

#endif  // RNTM_CLI_CLI_H_
