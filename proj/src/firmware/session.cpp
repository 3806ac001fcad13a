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

#include "fpgatee/firmware/session.hpp"

#include <algorithm>

namespace fpgatee::firmware {
namespace {

Bytes serialize_state(const SessionState& s) {
  ByteWriter w;
  w.raw(s.binding).u8(static_cast<std::uint8_t>(s.mode));
  for (std::uint32_t r : s.vm.regs) w.u32(r);
  w.u32(s.vm.pc).u64(s.vm.steps).u64(s.yields);
  w.lp32(s.writable).lp32(s.chal).raw(s.m3.view()).raw(s.pre.view());
  w.u32(static_cast<std::uint32_t>(s.transcript.size()));
  for (const auto& chunk : s.transcript) w.lp32(chunk);
  w.u32(s.cursor).u8(s.more_input ? 1 : 0).lp32(s.output);
  return std::move(w).take();
}

SessionState parse_state(ByteView plain) {
  ByteReader r(plain, ErrorCode::kMalformedImage);
  SessionState s;
  ByteView binding = r.raw(crypto::kTagSize);
  std::copy(binding.begin(), binding.end(), s.binding.begin());
  std::uint8_t mode = r.u8();
  if (mode > static_cast<std::uint8_t>(Mode::kPostAtt)) r.fail("session mode");
  s.mode = static_cast<Mode>(mode);
  for (auto& reg : s.vm.regs) reg = r.u32();
  s.vm.pc = r.u32();
  s.vm.steps = r.u64();
  s.yields = r.u64();
  s.writable = r.lp32();
  s.chal = r.lp32();
  s.m3 = crypto::Digest::from(r.raw(crypto::kDigestSize));
  s.pre = crypto::Digest::from(r.raw(crypto::kDigestSize));
  std::uint32_t chunks = r.u32();
  if (chunks > r.remaining() / 4) r.fail("transcript count");
  for (std::uint32_t i = 0; i < chunks; ++i) s.transcript.push_back(r.lp32());
  s.cursor = r.u32();
  std::uint8_t more = r.u8();
  if (more > 1) r.fail("input flag");
  s.more_input = more == 1;
  s.output = r.lp32();
  r.expect_done("session state");
  if (!s.transcript.empty() && s.cursor > s.transcript.back().size()) r.fail("input cursor");
  return s;
}

}  // namespace

Bytes seal_session(const SessionState& state, const crypto::Key& key, const crypto::Iv& iv) {
  Bytes plain = serialize_state(state);
  Bytes ct = crypto::encrypt(key, iv, plain);
  crypto::secure_zero(plain);
  ByteWriter w;
  w.raw(kSessionMagic).raw(iv).lp32(ct);
  crypto::Tag tag = crypto::mac(key, w.bytes());
  w.raw(tag);
  return std::move(w).take();
}

SessionState open_session(ByteView blob, const crypto::Key& key, const crypto::Tag& expected_binding) {
  if (blob.size() < kSessionMagic.size() || to_string(blob.first(kSessionMagic.size())) != kSessionMagic) {
    throw Error(ErrorCode::kBadMagic, "not a session blob");
  }
  ByteReader r(blob.subspan(kSessionMagic.size()), ErrorCode::kAuthFailure);
  crypto::Iv iv{};
  ByteView iv_bytes = r.raw(crypto::kIvSize);
  std::copy(iv_bytes.begin(), iv_bytes.end(), iv.begin());
  ByteView ct = r.raw(r.u32());
  std::size_t authenticated = kSessionMagic.size() + r.position();
  ByteView tag = r.raw(crypto::kTagSize);
  if (!r.done()) throw Error(ErrorCode::kAuthFailure, "trailing bytes after session tag");
  if (!crypto::verify_mac(key, blob.first(authenticated), tag)) {
    throw Error(ErrorCode::kAuthFailure, "session tag mismatch");
  }
  Bytes plain;
  try {
    plain = crypto::decrypt(key, iv, ct);
  } catch (const Error&) {
    throw Error(ErrorCode::kMalformedImage, "authenticated session does not decrypt");
  }
  SessionState s;
  try {
    s = parse_state(plain);
  } catch (...) {
    crypto::secure_zero(plain);
    throw;
  }
  crypto::secure_zero(plain);
  if (!crypto::constant_time_equal(s.binding, expected_binding)) {
    throw Error(ErrorCode::kStaleSession, "session belongs to a different SSA*");
  }
  return s;
}

}  // namespace fpgatee::firmware
