// base/rntm-common.h

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

#ifndef RNTM_BASE_RNTM_COMMON_H_
#define RNTM_BASE_RNTM_COMMON_H_

#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rntm {

/// Raised when a caller breaks a documented precondition (bad dimensions,
/// unknown labels, malformed files, invalid configuration).
class ContractError : public std::invalid_argument {
 public:
  explicit ContractError(const std::string &what) : std::invalid_argument(what) {}
};

/// Raised when a computation produces a non-finite value that cannot be
/// recovered from, e.g. a NaN loss in the middle of a training step.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

namespace internal {
[[noreturn]] void ContractFail(const char *cond, const std::string &msg);
}  // namespace internal

#define RNTM_REQUIRE(cond, msg)                                            \
  do {                                                                     \
    if (!(cond)) {                                                         \
      std::ostringstream rntm_require_os_;                                 \
      rntm_require_os_ << msg;                                             \
      ::rntm::internal::ContractFail(#cond, rntm_require_os_.str());       \
    }                                                                      \
  } while (0)

/// 64-bit FNV-1a; used for checksums of parameter blocks and files.
uint64_t Fnv1a64(std::string_view bytes, uint64_t hash = 0xcbf29ce484222325ULL);

std::string HexU64(uint64_t v);

/// Worker count for data-parallel loops: $RNTM_THREADS if set and positive,
/// otherwise the hardware concurrency (at least 1).
int DefaultNumThreads();

/// Runs fn(i) for i in [0, n) on up to num_threads threads. Work items are
/// independent; results must be written to per-index slots so that any
/// reduction afterwards happens in index order.
void ParallelFor(int n, int num_threads, const std::function<void(int)> &fn);

}  // namespace rntm

#endif  // RNTM_BASE_RNTM_COMMON_H_
