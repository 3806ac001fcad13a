// Copyright 2026 The fpgatee Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fpgatee/error.hpp"

namespace fpgatee {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline Bytes to_bytes(std::string_view s) {
  auto v = as_bytes(s);
  return Bytes(v.begin(), v.end());
}

inline std::string to_string(ByteView b) {
  return std::string(reinterpret_cast<const char*>(b.data()), b.size());
}

std::string to_hex(ByteView b);
Bytes from_hex(std::string_view hex);

// Little-endian append-only encoder used by every binary format in the
// project.
class ByteWriter {
 public:
  ByteWriter& u8(std::uint8_t v) {
    out_.push_back(v);
    return *this;
  }
  ByteWriter& u16(std::uint16_t v) { return put(v, 2); }
  ByteWriter& u32(std::uint32_t v) { return put(v, 4); }
  ByteWriter& u64(std::uint64_t v) { return put(v, 8); }
  ByteWriter& raw(ByteView b) {
    out_.insert(out_.end(), b.begin(), b.end());
    return *this;
  }
  ByteWriter& raw(std::string_view s) { return raw(as_bytes(s)); }
  // u32 length prefix followed by the bytes.
  ByteWriter& lp32(ByteView b);
  ByteWriter& lp32(std::string_view s) { return lp32(as_bytes(s)); }
  // u16 length prefix followed by the bytes.
  ByteWriter& lp16(std::string_view s);

  const Bytes& bytes() const& { return out_; }
  Bytes take() && { return std::move(out_); }
  std::size_t size() const { return out_.size(); }

 private:
  ByteWriter& put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
  }

  Bytes out_;
};

// Bounds-checked decoder. Every overrun throws `Error` with the code given at
// construction so each format reports its own failure kind.
class ByteReader {
 public:
  explicit ByteReader(ByteView in, ErrorCode on_error = ErrorCode::kMalformedInput)
      : in_(in), on_error_(on_error) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  ByteView raw(std::size_t n);
  Bytes lp32();
  std::string lp16();

  std::size_t remaining() const { return in_.size() - pos_; }
  std::size_t position() const { return pos_; }
  bool done() const { return pos_ == in_.size(); }
  void expect_done(std::string_view what) const;
  [[noreturn]] void fail(std::string_view what) const;

 private:
  std::uint64_t get(int n);

  ByteView in_;
  std::size_t pos_ = 0;
  ErrorCode on_error_;
};

}  // namespace fpgatee
