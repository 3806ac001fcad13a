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

#include <string_view>
#include <vector>

#include "fpgatee/bytes.hpp"
#include "fpgatee/crypto/crypto.hpp"
#include "fpgatee/vm/vm.hpp"

namespace fpgatee::firmware {

inline constexpr std::string_view kSessionMagic = "BYOTSES1";

enum class Mode : std::uint8_t { kPlain = 0, kPreAtt = 1, kPostAtt = 2 };

// Everything needed to continue a suspended SSA. Read-only sections are not
// here; they are reloaded from the SSA* on restore.
struct SessionState {
  crypto::Tag binding{};  // tag of the SSA* the session belongs to
  Mode mode = Mode::kPlain;
  vm::VmState vm;
  std::uint64_t yields = 0;
  Bytes writable;  // data, bss, heap and stack as one span
  Bytes chal;
  crypto::Digest m3;
  crypto::Digest pre;
  std::vector<Bytes> transcript;
  std::uint32_t cursor = 0;  // read position in the last transcript chunk
  bool more_input = false;
  Bytes output;  // staged so far

  friend bool operator==(const SessionState&, const SessionState&) = default;
};

// magic | iv | lp32 ciphertext | tag over every preceding byte, keyed with
// the SSA developer's key.
Bytes seal_session(const SessionState& state, const crypto::Key& key, const crypto::Iv& iv);
// Throws BadMagic, AuthFailure (tag), StaleSession (binding) or MalformedImage.
SessionState open_session(ByteView blob, const crypto::Key& key, const crypto::Tag& expected_binding);

}  // namespace fpgatee::firmware
