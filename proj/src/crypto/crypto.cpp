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

#include "fpgatee/crypto/crypto.hpp"

#include <openssl/core_names.h>
#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/params.h>
#include <openssl/rand.h>

#include <memory>

namespace fpgatee::crypto {
namespace {

struct MacDeleter {
  void operator()(EVP_MAC* m) const { EVP_MAC_free(m); }
  void operator()(EVP_MAC_CTX* c) const { EVP_MAC_CTX_free(c); }
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};

[[noreturn]] void openssl_failure(const char* what) {
  throw Error(ErrorCode::kInvalidState, std::string("openssl: ") + what);
}

std::unique_ptr<EVP_MAC_CTX, MacDeleter> new_blake2b_mac(ByteView key) {
  if (key.empty() || key.size() > 64) {
    throw Error(ErrorCode::kBadKey, "keyed BLAKE2b needs a 1..64 byte key");
  }
  std::unique_ptr<EVP_MAC, MacDeleter> mac(EVP_MAC_fetch(nullptr, "BLAKE2BMAC", nullptr));
  if (!mac) openssl_failure("BLAKE2BMAC unavailable");
  std::unique_ptr<EVP_MAC_CTX, MacDeleter> ctx(EVP_MAC_CTX_new(mac.get()));
  if (!ctx) openssl_failure("EVP_MAC_CTX_new");
  std::size_t size = kDigestSize;
  OSSL_PARAM params[] = {
      OSSL_PARAM_construct_size_t(OSSL_MAC_PARAM_SIZE, &size),
      OSSL_PARAM_construct_end(),
  };
  if (EVP_MAC_init(ctx.get(), key.data(), key.size(), params) != 1) {
    openssl_failure("BLAKE2BMAC init");
  }
  return ctx;
}

}  // namespace

Digest Digest::from(ByteView b) {
  if (b.size() != kDigestSize) throw Error(ErrorCode::kMalformedInput, "digest must be 64 bytes");
  Digest d;
  std::copy(b.begin(), b.end(), d.bytes.begin());
  return d;
}

Digest hash(ByteView data) {
  Digest d;
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), d.bytes.data(), &len, EVP_blake2b512(), nullptr) != 1 ||
      len != kDigestSize) {
    openssl_failure("BLAKE2b");
  }
  return d;
}

struct KeyedHasher::Impl {
  std::unique_ptr<EVP_MAC_CTX, MacDeleter> ctx;
};

KeyedHasher::KeyedHasher(ByteView key) : impl_(new Impl{new_blake2b_mac(key)}) {}

KeyedHasher::~KeyedHasher() { delete impl_; }

KeyedHasher& KeyedHasher::update(ByteView data) {
  if (!data.empty() && EVP_MAC_update(impl_->ctx.get(), data.data(), data.size()) != 1) {
    openssl_failure("BLAKE2BMAC update");
  }
  return *this;
}

KeyedHasher& KeyedHasher::update_u32(std::uint32_t v) {
  std::uint8_t le[4] = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                        static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 24)};
  return update(le);
}

KeyedHasher& KeyedHasher::update_lp(ByteView data) {
  update_u32(static_cast<std::uint32_t>(data.size()));
  return update(data);
}

Digest KeyedHasher::finish() {
  Digest d;
  std::size_t len = 0;
  if (EVP_MAC_final(impl_->ctx.get(), d.bytes.data(), &len, d.bytes.size()) != 1 ||
      len != kDigestSize) {
    openssl_failure("BLAKE2BMAC final");
  }
  return d;
}

Digest keyed_hash(ByteView key, ByteView data) {
  KeyedHasher h(key);
  h.update(data);
  return h.finish();
}

Tag hmac_sha512(ByteView key, ByteView data) {
  std::unique_ptr<EVP_MAC, MacDeleter> mac(EVP_MAC_fetch(nullptr, "HMAC", nullptr));
  if (!mac) openssl_failure("HMAC unavailable");
  std::unique_ptr<EVP_MAC_CTX, MacDeleter> ctx(EVP_MAC_CTX_new(mac.get()));
  char digest[] = "SHA512";
  OSSL_PARAM params[] = {
      OSSL_PARAM_construct_utf8_string(OSSL_MAC_PARAM_DIGEST, digest, 0),
      OSSL_PARAM_construct_end(),
  };
  // HMAC permits an empty key; OpenSSL wants a non-null pointer for it.
  static const std::uint8_t kEmpty = 0;
  const std::uint8_t* key_ptr = key.empty() ? &kEmpty : key.data();
  Tag tag{};
  std::size_t len = 0;
  if (!ctx || EVP_MAC_init(ctx.get(), key_ptr, key.size(), params) != 1 ||
      EVP_MAC_update(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_MAC_final(ctx.get(), tag.data(), &len, tag.size()) != 1 || len != kTagSize) {
    openssl_failure("HMAC-SHA512");
  }
  return tag;
}

bool constant_time_equal(ByteView a, ByteView b) {
  if (a.size() != b.size()) return false;
  return CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

bool verify_mac(const Key& key, ByteView data, ByteView tag) {
  Tag expected = mac(key, data);
  return constant_time_equal(expected, tag);
}

Bytes encrypt(const Key& key, const Iv& iv, ByteView plaintext) {
  std::unique_ptr<EVP_CIPHER_CTX, MacDeleter> ctx(EVP_CIPHER_CTX_new());
  Bytes out(plaintext.size() + kBlockSize);
  int n1 = 0;
  int n2 = 0;
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_cbc(), nullptr, key.data(), iv.data()) != 1 ||
      EVP_EncryptUpdate(ctx.get(), out.data(), &n1, plaintext.data(),
                        static_cast<int>(plaintext.size())) != 1 ||
      EVP_EncryptFinal_ex(ctx.get(), out.data() + n1, &n2) != 1) {
    openssl_failure("AES-256-CBC encrypt");
  }
  out.resize(static_cast<std::size_t>(n1 + n2));
  return out;
}

Bytes decrypt(const Key& key, const Iv& iv, ByteView ciphertext) {
  if (ciphertext.empty() || ciphertext.size() % kBlockSize != 0) {
    throw Error(ErrorCode::kBadPadding, "ciphertext is not a whole number of blocks");
  }
  std::unique_ptr<EVP_CIPHER_CTX, MacDeleter> ctx(EVP_CIPHER_CTX_new());
  Bytes out(ciphertext.size() + kBlockSize);
  int n1 = 0;
  int n2 = 0;
  if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_cbc(), nullptr, key.data(), iv.data()) != 1 ||
      EVP_DecryptUpdate(ctx.get(), out.data(), &n1, ciphertext.data(),
                        static_cast<int>(ciphertext.size())) != 1) {
    openssl_failure("AES-256-CBC decrypt");
  }
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + n1, &n2) != 1) {
    secure_zero(out);
    throw Error(ErrorCode::kBadPadding, "invalid PKCS#7 padding");
  }
  out.resize(static_cast<std::size_t>(n1 + n2));
  return out;
}

Key derive_key(const Key& base, std::string_view label) {
  if (label.empty()) throw Error(ErrorCode::kBadKey, "derive_key needs a non-empty label");
  Digest d = keyed_hash(base, as_bytes(label));
  Key k{};
  std::copy_n(d.bytes.begin(), k.size(), k.begin());
  return k;
}

void secure_zero(std::span<std::uint8_t> buf) {
  if (!buf.empty()) OPENSSL_cleanse(buf.data(), buf.size());
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
  if (!out.empty() && RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    openssl_failure("RAND_bytes");
  }
}

void DeterministicRandom::fill(std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < out.size(); i += 8) {
    std::uint64_t v = engine_();
    for (std::size_t j = 0; j < 8 && i + j < out.size(); ++j) {
      out[i + j] = static_cast<std::uint8_t>(v >> (8 * j));
    }
  }
}

}  // namespace fpgatee::crypto
