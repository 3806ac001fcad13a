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

#include "fpgatee/bytes.hpp"

#include <limits>

namespace fpgatee {

std::string to_hex(ByteView b) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(b.size() * 2);
  for (std::uint8_t c : b) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xf]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw Error(ErrorCode::kMalformedInput, "odd-length hex string");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(hex[2 * i]);
    int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::kMalformedInput, "bad hex digit");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

ByteWriter& ByteWriter::lp32(ByteView b) {
  if (b.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kMalformedInput, "field exceeds 32-bit length");
  }
  u32(static_cast<std::uint32_t>(b.size()));
  return raw(b);
}

ByteWriter& ByteWriter::lp16(std::string_view s) {
  if (s.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::kMalformedInput, "field exceeds 16-bit length");
  }
  u16(static_cast<std::uint16_t>(s.size()));
  return raw(s);
}

std::uint64_t ByteReader::get(int n) {
  if (remaining() < static_cast<std::size_t>(n)) fail("truncated integer");
  std::uint64_t v = 0;
  for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
  pos_ += static_cast<std::size_t>(n);
  return v;
}

ByteView ByteReader::raw(std::size_t n) {
  if (remaining() < n) fail("truncated field");
  ByteView out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

Bytes ByteReader::lp32() {
  std::uint32_t n = u32();
  ByteView v = raw(n);
  return Bytes(v.begin(), v.end());
}

std::string ByteReader::lp16() {
  std::uint16_t n = u16();
  return to_string(raw(n));
}

void ByteReader::expect_done(std::string_view what) const {
  if (!done()) fail(std::string(what) + ": trailing bytes");
}

void ByteReader::fail(std::string_view what) const {
  throw Error(on_error_, std::string(what));
}

}  // namespace fpgatee
