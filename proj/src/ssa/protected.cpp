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

#include "fpgatee/ssa/protected.hpp"

#include <algorithm>

namespace fpgatee::ssa {

ProtectedHeader parse_protected_header(ByteView blob) {
  ByteReader r(blob, ErrorCode::kMalformedImage);
  if (blob.size() < kProtectedMagic.size() || to_string(r.raw(kProtectedMagic.size())) != kProtectedMagic) {
    throw Error(ErrorCode::kBadMagic, "not a protected SSA");
  }
  ProtectedHeader h;
  h.developer_id = r.lp16();
  ByteView iv = r.raw(crypto::kIvSize);
  std::copy(iv.begin(), iv.end(), h.iv.begin());
  std::uint32_t ct_len = r.u32();
  h.ciphertext = r.raw(ct_len);
  h.authenticated = blob.first(r.position());
  h.tag = r.raw(crypto::kTagSize);
  r.expect_done("protected SSA");
  return h;
}

Bytes pack_with_iv(const SsaImage& image, const crypto::Key& developer_key, std::string_view developer,
                   const crypto::Iv& iv) {
  Bytes plain = serialize_image(image);
  Bytes ct = crypto::encrypt(developer_key, iv, plain);
  crypto::secure_zero(plain);
  ByteWriter w;
  w.raw(kProtectedMagic).lp16(developer).raw(iv).lp32(ct);
  crypto::Tag tag = crypto::mac(developer_key, w.bytes());
  w.raw(tag);
  return std::move(w).take();
}

Bytes pack(const SsaImage& image, const crypto::KeyStore& keys, std::string_view developer,
           crypto::RandomSource& rng) {
  const crypto::Key& key = keys.developer_key(developer);
  return pack_with_iv(image, key, developer, rng.array<crypto::kIvSize>());
}

SsaImage open(ByteView blob, const crypto::KeyStore& keys) {
  ProtectedHeader h = parse_protected_header(blob);
  const crypto::Key& key = keys.developer_key(h.developer_id);
  if (!crypto::verify_mac(key, h.authenticated, h.tag)) {
    throw Error(ErrorCode::kAuthFailure, "protected SSA tag mismatch");
  }
  Bytes plain;
  try {
    plain = crypto::decrypt(key, h.iv, h.ciphertext);
  } catch (const Error&) {
    throw Error(ErrorCode::kMalformedImage, "authenticated SSA ciphertext does not decrypt");
  }
  try {
    SsaImage image = parse_image(plain);
    crypto::secure_zero(plain);
    if (image.metadata.developer_id != h.developer_id) {
      throw Error(ErrorCode::kMalformedImage, "image developer differs from header");
    }
    return image;
  } catch (...) {
    crypto::secure_zero(plain);
    throw;
  }
}

crypto::Tag protected_tag(ByteView blob) {
  ProtectedHeader h = parse_protected_header(blob);
  crypto::Tag tag{};
  std::copy(h.tag.begin(), h.tag.end(), tag.begin());
  return tag;
}

}  // namespace fpgatee::ssa
