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

#include <cstddef>
#include <string_view>
#include <utility>

#include "fpgatee/bytes.hpp"

namespace fpgatee::firmware {

inline constexpr std::string_view kFirmwareMagic = "BYOTFWI1";
inline constexpr std::size_t kVectorTableSize = 256;

// The bytes the enclave firmware occupies in BRAM from offset 0. The state
// machine itself is host code; this image is what gets measured.
struct FirmwareImage {
  Bytes vector_table;
  Bytes code;
  Bytes rodata;
  Bytes data;

  friend bool operator==(const FirmwareImage&, const FirmwareImage&) = default;
};

// Deterministic synthetic image; different versions give different bytes.
FirmwareImage reference_firmware(std::string_view version = "1.0");

// magic | lp32 vector_table | lp32 code | lp32 rodata | lp32 data
Bytes serialize_firmware(const FirmwareImage& fw);
// Throws BadMagic or MalformedImage. Trailing bytes are an error.
FirmwareImage parse_firmware(ByteView bytes);
// Parses an image at the start of `bytes` and reports how many bytes it used.
std::pair<FirmwareImage, std::size_t> parse_firmware_prefix(ByteView bytes);

}  // namespace fpgatee::firmware
