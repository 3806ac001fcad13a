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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "fpgatee/bytes.hpp"

namespace fpgatee::ssa {

inline constexpr std::string_view kImageFileMagic = "BYOTIMG1";

struct SsaMetadata {
  std::string developer_id;
  std::uint32_t version = 0;
  std::string name;

  friend bool operator==(const SsaMetadata&, const SsaMetadata&) = default;
};

struct SsaImage {
  std::uint32_t entry_offset = 0;  // byte offset into text
  Bytes text;
  Bytes rodata;
  Bytes data;
  std::uint32_t bss_size = 0;
  SsaMetadata metadata;

  std::size_t section_bytes() const { return text.size() + rodata.size() + data.size() + bss_size; }

  friend bool operator==(const SsaImage&, const SsaImage&) = default;
};

// Throws MalformedImage if entry_offset is outside text.
void check_image(const SsaImage& image);

// entry u32 | lp32 text | lp32 rodata | lp32 data | bss u32 | lp16 developer | version u32 | lp16 name
Bytes serialize_image(const SsaImage& image);
// Throws MalformedImage on any structural problem, including trailing bytes.
SsaImage parse_image(ByteView bytes);

// Image files on disk are the magic followed by the canonical serialization.
Bytes image_file(const SsaImage& image);
SsaImage parse_image_file(ByteView file);

}  // namespace fpgatee::ssa
