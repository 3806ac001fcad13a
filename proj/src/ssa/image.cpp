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

#include "fpgatee/ssa/image.hpp"

#include <limits>

namespace fpgatee::ssa {

void check_image(const SsaImage& image) {
  if (image.entry_offset >= image.text.size()) {
    throw Error(ErrorCode::kMalformedImage, "entry offset " + std::to_string(image.entry_offset) +
                                                " outside text of " + std::to_string(image.text.size()) + " bytes");
  }
  constexpr std::size_t kMax = std::numeric_limits<std::uint32_t>::max();
  if (image.text.size() > kMax || image.rodata.size() > kMax || image.data.size() > kMax) {
    throw Error(ErrorCode::kMalformedImage, "section too large");
  }
  if (image.metadata.developer_id.empty() || image.metadata.developer_id.size() > 0xffff ||
      image.metadata.name.size() > 0xffff) {
    throw Error(ErrorCode::kMalformedImage, "bad metadata strings");
  }
}

Bytes serialize_image(const SsaImage& image) {
  check_image(image);
  ByteWriter w;
  w.u32(image.entry_offset).lp32(image.text).lp32(image.rodata).lp32(image.data).u32(image.bss_size);
  w.lp16(image.metadata.developer_id).u32(image.metadata.version).lp16(image.metadata.name);
  return std::move(w).take();
}

SsaImage parse_image(ByteView bytes) {
  ByteReader r(bytes, ErrorCode::kMalformedImage);
  SsaImage image;
  image.entry_offset = r.u32();
  image.text = r.lp32();
  image.rodata = r.lp32();
  image.data = r.lp32();
  image.bss_size = r.u32();
  image.metadata.developer_id = r.lp16();
  image.metadata.version = r.u32();
  image.metadata.name = r.lp16();
  r.expect_done("SSA image");
  check_image(image);
  return image;
}

Bytes image_file(const SsaImage& image) {
  ByteWriter w;
  w.raw(kImageFileMagic).raw(serialize_image(image));
  return std::move(w).take();
}

SsaImage parse_image_file(ByteView file) {
  if (file.size() < kImageFileMagic.size() || to_string(file.first(kImageFileMagic.size())) != kImageFileMagic) {
    throw Error(ErrorCode::kBadMagic, "not an SSA image file");
  }
  return parse_image(file.subspan(kImageFileMagic.size()));
}

}  // namespace fpgatee::ssa
