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

#include "fpgatee/firmware/image.hpp"

#include <string>

#include "fpgatee/crypto/crypto.hpp"

namespace fpgatee::firmware {
namespace {

Bytes expand(std::string_view label, std::size_t n) {
  Bytes out;
  for (std::uint32_t block = 0; out.size() < n; ++block) {
    ByteWriter w;
    w.raw(label).u32(block);
    crypto::Digest d = crypto::hash(w.bytes());
    out.insert(out.end(), d.bytes.begin(), d.bytes.end());
  }
  out.resize(n);
  return out;
}

}  // namespace

FirmwareImage reference_firmware(std::string_view version) {
  FirmwareImage fw;
  ByteWriter vt;
  for (std::uint32_t i = 0; i < kVectorTableSize / 4; ++i) vt.u32(0x100 + 0x20 * i);
  fw.vector_table = std::move(vt).take();
  fw.code = expand("fpgatee firmware code " + std::string(version), 3072);
  std::string banner = "fpgatee enclave firmware " + std::string(version);
  fw.rodata = to_bytes(banner);
  fw.rodata.resize(256);
  fw.data = expand("fpgatee firmware data " + std::string(version), 128);
  return fw;
}

Bytes serialize_firmware(const FirmwareImage& fw) {
  ByteWriter w;
  w.raw(kFirmwareMagic).lp32(fw.vector_table).lp32(fw.code).lp32(fw.rodata).lp32(fw.data);
  return std::move(w).take();
}

std::pair<FirmwareImage, std::size_t> parse_firmware_prefix(ByteView bytes) {
  if (bytes.size() < kFirmwareMagic.size() || to_string(bytes.first(kFirmwareMagic.size())) != kFirmwareMagic) {
    throw Error(ErrorCode::kBadMagic, "not a firmware image");
  }
  ByteReader r(bytes.subspan(kFirmwareMagic.size()), ErrorCode::kMalformedImage);
  FirmwareImage fw;
  fw.vector_table = r.lp32();
  fw.code = r.lp32();
  fw.rodata = r.lp32();
  fw.data = r.lp32();
  if (fw.vector_table.size() != kVectorTableSize) {
    throw Error(ErrorCode::kMalformedImage, "vector table must be 256 bytes");
  }
  return {std::move(fw), kFirmwareMagic.size() + r.position()};
}

FirmwareImage parse_firmware(ByteView bytes) {
  auto [fw, used] = parse_firmware_prefix(bytes);
  if (used != bytes.size()) throw Error(ErrorCode::kMalformedImage, "trailing bytes after firmware image");
  return fw;
}

}  // namespace fpgatee::firmware
