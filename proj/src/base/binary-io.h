// base/binary-io.h

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

#ifndef RNTM_BASE_BINARY_IO_H_
#define RNTM_BASE_BINARY_IO_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace rntm {

// Little-endian encoders that append to a byte buffer. Files are assembled in
// memory and written in one go, so their bytes never depend on host order.
class ByteWriter {
 public:
  void PutU32(uint32_t v);
  void PutI32(int32_t v) { PutU32(static_cast<uint32_t>(v)); }
  void PutU64(uint64_t v);
  void PutF32(float v);
  void PutF64(double v);
  void PutBytes(std::string_view bytes) { buf_.append(bytes); }
  /// u32 length followed by the raw bytes.
  void PutString(std::string_view s);

  const std::string &bytes() const { return buf_; }
  std::string Release() { return std::move(buf_); }

 private:
  std::string buf_;
};

/// Reader over an in-memory buffer; every accessor throws ContractError on
/// truncation, naming `what` (usually the file path) in the message.
class ByteReader {
 public:
  ByteReader(std::string_view data, std::string what)
      : data_(data), what_(std::move(what)) {}

  uint32_t GetU32();
  int32_t GetI32() { return static_cast<int32_t>(GetU32()); }
  uint64_t GetU64();
  float GetF32();
  double GetF64();
  std::string_view GetBytes(size_t n);
  std::string GetString();

  bool AtEnd() const { return pos_ == data_.size(); }
  size_t Remaining() const { return data_.size() - pos_; }

 private:
  void Need(size_t n);

  std::string_view data_;
  std::string what_;
  size_t pos_ = 0;
};

/// Whole-file helpers; both throw ContractError on I/O failure.
std::string ReadFileBytes(const std::string &path);
void WriteFileBytes(const std::string &path, std::string_view bytes);

}  // namespace rntm

#endif  // RNTM_BASE_BINARY_IO_H_
