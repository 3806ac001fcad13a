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

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "fpgatee/bytes.hpp"

namespace fpgatee::crypto {

inline constexpr std::size_t kDigestSize = 64;
inline constexpr std::size_t kKeySize = 32;
inline constexpr std::size_t kIvSize = 16;
inline constexpr std::size_t kTagSize = 64;
inline constexpr std::size_t kBlockSize = 16;

using Key = std::array<std::uint8_t, kKeySize>;
using Iv = std::array<std::uint8_t, kIvSize>;
using Tag = std::array<std::uint8_t, kTagSize>;

// 64-byte BLAKE2b output.
struct Digest {
  std::array<std::uint8_t, kDigestSize> bytes{};

  ByteView view() const { return bytes; }
  std::string hex() const { return to_hex(bytes); }
  static Digest from(ByteView b);

  friend bool operator==(const Digest&, const Digest&) = default;
};

// BLAKE2b-512.
Digest hash(ByteView data);

// Keyed BLAKE2b-512 (key of 1..64 bytes).
Digest keyed_hash(ByteView key, ByteView data);

// Incremental keyed BLAKE2b-512 for measurements assembled from many pieces.
class KeyedHasher {
 public:
  explicit KeyedHasher(ByteView key);
  ~KeyedHasher();
  KeyedHasher(const KeyedHasher&) = delete;
  KeyedHasher& operator=(const KeyedHasher&) = delete;

  KeyedHasher& update(ByteView data);
  KeyedHasher& update_u32(std::uint32_t v);
  // u32 little-endian length followed by the bytes.
  KeyedHasher& update_lp(ByteView data);
  Digest finish();

 private:
  struct Impl;
  Impl* impl_;
};

// HMAC-SHA512 with an arbitrary-length key.
Tag hmac_sha512(ByteView key, ByteView data);

inline Tag mac(const Key& key, ByteView data) { return hmac_sha512(key, data); }

bool constant_time_equal(ByteView a, ByteView b);

bool verify_mac(const Key& key, ByteView data, ByteView tag);

// AES-256-CBC with PKCS#7 padding.
Bytes encrypt(const Key& key, const Iv& iv, ByteView plaintext);

// Throws BadPadding if the final block does not unpad. Callers only reach this
// after their MAC check has passed.
Bytes decrypt(const Key& key, const Iv& iv, ByteView ciphertext);

// First 32 bytes of keyed-BLAKE2b(base, label).
Key derive_key(const Key& base, std::string_view label);

void secure_zero(std::span<std::uint8_t> buf);

class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  template <std::size_t N>
  std::array<std::uint8_t, N> array() {
    std::array<std::uint8_t, N> a{};
    fill(a);
    return a;
  }
};

// OS CSPRNG via OpenSSL RAND_bytes.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

// Reproducible stream for tests and golden files. Not for real keys.
class DeterministicRandom final : public RandomSource {
 public:
  explicit DeterministicRandom(std::uint64_t seed) : engine_(seed) {}
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::mt19937_64 engine_;
};

}  // namespace fpgatee::crypto
