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

#include <string>
#include <string_view>

#include "fpgatee/bytes.hpp"
#include "fpgatee/crypto/crypto.hpp"
#include "fpgatee/crypto/keystore.hpp"
#include "fpgatee/ssa/image.hpp"

namespace fpgatee::ssa {

inline constexpr std::string_view kProtectedMagic = "BYOTSSA1";

// Cleartext framing of an SSA* blob. Nothing here is trusted until the tag
// has been checked.
struct ProtectedHeader {
  std::string developer_id;
  crypto::Iv iv{};
  ByteView ciphertext;
  ByteView tag;
  ByteView authenticated;  // every byte before the tag
};

// Throws BadMagic or MalformedInput.
ProtectedHeader parse_protected_header(ByteView blob);

Bytes pack(const SsaImage& image, const crypto::KeyStore& keys, std::string_view developer,
           crypto::RandomSource& rng);
Bytes pack_with_iv(const SsaImage& image, const crypto::Key& developer_key, std::string_view developer,
                   const crypto::Iv& iv);

// MAC first, then decrypt, then parse. No plaintext leaves on the error path.
SsaImage open(ByteView blob, const crypto::KeyStore& keys);

// The 64-byte tag, used to bind sessions to the SSA* they came from.
crypto::Tag protected_tag(ByteView blob);

}  // namespace fpgatee::ssa
