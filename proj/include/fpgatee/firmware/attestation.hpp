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

#include <vector>

#include "fpgatee/bytes.hpp"
#include "fpgatee/crypto/crypto.hpp"
#include "fpgatee/firmware/image.hpp"
#include "fpgatee/ssa/image.hpp"

namespace fpgatee::firmware {

// Shared by the enclave firmware and the verifier so both sides hash the
// same canonical stream. Variable-length operands are u32 length prefixed.

// label | vector_table | code | rodata | data | m3 | chal | input
//       | entry | text | rodata | data | bss
crypto::Digest pre_exec_att(const crypto::Key& att_key, const FirmwareImage& fw, const crypto::Digest& m3,
                            ByteView chal, ByteView input, const ssa::SsaImage& ssa);

// label | vector_table | code | rodata | m3 | chal | transcript | output
//       | text | rodata | pre
// The transcript is every input chunk the SSA received, first one included.
// Writable firmware and SSA data are left out since they change during a run.
crypto::Digest post_exec_att(const crypto::Key& att_key, const FirmwareImage& fw, const crypto::Digest& m3,
                             ByteView chal, const std::vector<Bytes>& transcript, ByteView output,
                             const ssa::SsaImage& ssa, const crypto::Digest& pre);

}  // namespace fpgatee::firmware
