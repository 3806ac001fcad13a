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

#include "fpgatee/firmware/attestation.hpp"

namespace fpgatee::firmware {

crypto::Digest pre_exec_att(const crypto::Key& att_key, const FirmwareImage& fw, const crypto::Digest& m3,
                            ByteView chal, ByteView input, const ssa::SsaImage& ssa) {
  crypto::KeyedHasher h(att_key);
  h.update_lp(as_bytes("fpgatee/pre-exec/1"));
  h.update_lp(fw.vector_table).update_lp(fw.code).update_lp(fw.rodata).update_lp(fw.data);
  h.update(m3.view()).update_lp(chal).update_lp(input);
  h.update_u32(ssa.entry_offset).update_lp(ssa.text).update_lp(ssa.rodata).update_lp(ssa.data);
  h.update_u32(ssa.bss_size);
  return h.finish();
}

crypto::Digest post_exec_att(const crypto::Key& att_key, const FirmwareImage& fw, const crypto::Digest& m3,
                             ByteView chal, const std::vector<Bytes>& transcript, ByteView output,
                             const ssa::SsaImage& ssa, const crypto::Digest& pre) {
  crypto::KeyedHasher h(att_key);
  h.update_lp(as_bytes("fpgatee/post-exec/1"));
  h.update_lp(fw.vector_table).update_lp(fw.code).update_lp(fw.rodata);
  h.update(m3.view()).update_lp(chal);
  h.update_u32(static_cast<std::uint32_t>(transcript.size()));
  for (const auto& chunk : transcript) h.update_lp(chunk);
  h.update_lp(output).update_lp(ssa.text).update_lp(ssa.rodata).update(pre.view());
  return h.finish();
}

}  // namespace fpgatee::firmware
