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

#include "fpgatee/boot/boot.hpp"

#include <algorithm>

#include "fpgatee/hw/synthesis.hpp"

namespace fpgatee::boot {

MeasurementChain compute_chain(ByteView fsbl, ByteView ssbl, ByteView bitstream, ByteView firmware) {
  MeasurementChain c;
  c.m1 = crypto::hash(fsbl);
  Bytes buf(c.m1.bytes.begin(), c.m1.bytes.end());
  buf.insert(buf.end(), ssbl.begin(), ssbl.end());
  c.m2 = crypto::hash(buf);
  buf.assign(c.m2.bytes.begin(), c.m2.bytes.end());
  buf.insert(buf.end(), bitstream.begin(), bitstream.end());
  buf.insert(buf.end(), firmware.begin(), firmware.end());
  c.m3 = crypto::hash(buf);
  return c;
}

Bytes seal_fpga_image(const FpgaContents& contents, const crypto::Key& device_key, const crypto::Iv& iv) {
  ByteWriter plain;
  plain.lp32(contents.manifest).lp32(contents.firmware);
  Bytes ct = crypto::encrypt(device_key, iv, plain.bytes());
  ByteWriter w;
  w.raw(kFpgaImageMagic).raw(iv).lp32(ct);
  crypto::Tag tag = crypto::mac(device_key, w.bytes());
  w.raw(tag);
  return std::move(w).take();
}

Bytes seal_fpga_image(const FpgaContents& contents, const crypto::Key& device_key, crypto::RandomSource& rng) {
  return seal_fpga_image(contents, device_key, rng.array<crypto::kIvSize>());
}

namespace {

struct FpgaFraming {
  crypto::Iv iv{};
  ByteView ciphertext;
  ByteView authenticated;
  ByteView tag;
};

FpgaFraming frame_fpga_image(ByteView image, ErrorCode on_error) {
  if (image.size() < kFpgaImageMagic.size() || to_string(image.first(kFpgaImageMagic.size())) != kFpgaImageMagic) {
    throw Error(ErrorCode::kBadMagic, "not an FPGA image");
  }
  ByteReader r(image.subspan(kFpgaImageMagic.size()), on_error);
  FpgaFraming f;
  ByteView iv_bytes = r.raw(crypto::kIvSize);
  std::copy(iv_bytes.begin(), iv_bytes.end(), f.iv.begin());
  std::uint32_t ct_len = r.u32();
  f.ciphertext = r.raw(ct_len);
  f.authenticated = image.first(kFpgaImageMagic.size() + r.position());
  f.tag = r.raw(crypto::kTagSize);
  if (!r.done()) throw Error(on_error, "trailing bytes after FPGA image tag");
  return f;
}

}  // namespace

void check_fpga_image_framing(ByteView image) { frame_fpga_image(image, ErrorCode::kMalformedImage); }

FpgaContents open_fpga_image(ByteView image, const crypto::Key& device_key) {
  FpgaFraming f = frame_fpga_image(image, ErrorCode::kAuthFailure);
  if (!crypto::verify_mac(device_key, f.authenticated, f.tag)) {
    throw Error(ErrorCode::kAuthFailure, "FPGA image tag mismatch");
  }
  Bytes plain;
  try {
    plain = crypto::decrypt(device_key, f.iv, f.ciphertext);
  } catch (const Error&) {
    throw Error(ErrorCode::kMalformedImage, "authenticated FPGA image does not decrypt");
  }
  ByteReader pr(plain, ErrorCode::kMalformedImage);
  FpgaContents c;
  c.manifest = pr.lp32();
  c.firmware = pr.lp32();
  pr.expect_done("FPGA image payload");
  crypto::secure_zero(plain);
  return c;
}

Bytes BootImage::serialize() const {
  ByteWriter w;
  w.raw(kBootImageMagic).lp32(fsbl).lp32(ssbl).lp32(fpga_image);
  return std::move(w).take();
}

BootImage BootImage::parse(ByteView bytes) {
  if (bytes.size() < kBootImageMagic.size() || to_string(bytes.first(kBootImageMagic.size())) != kBootImageMagic) {
    throw Error(ErrorCode::kBadMagic, "not a boot image");
  }
  ByteReader r(bytes.subspan(kBootImageMagic.size()), ErrorCode::kMalformedInput);
  BootImage b;
  b.fsbl = r.lp32();
  b.ssbl = r.lp32();
  b.fpga_image = r.lp32();
  r.expect_done("boot image");
  return b;
}

Bytes seb_header(const hw::SebLayout& l) {
  ByteWriter w;
  w.raw(hw::kSebMagic).u32(hw::kSebVersion).u32(hw::SebLayout::kRegionCount);
  const std::uint32_t regions[][2] = {
      {l.header, hw::SebLayout::kHeaderSize},      {l.ssa_star, l.sizes.ssa_star},
      {l.input, l.sizes.input},                    {l.output, l.sizes.output},
      {l.chal, hw::SebLayout::kChalSize},          {l.pre_exec_att, hw::SebLayout::kDigestSize},
      {l.post_exec_att, hw::SebLayout::kDigestSize}, {l.other, hw::SebLayout::kOtherSize},
  };
  for (const auto& r : regions) w.u32(r[0]).u32(r[1]);
  Bytes out = std::move(w).take();
  out.resize(hw::SebLayout::kHeaderSize, 0);
  return out;
}

BootResult measure_boot(ByteView boot_image, const crypto::KeyStore& keys) {
  BootImage image = BootImage::parse(boot_image);
  BootResult result;
  result.contents = open_fpga_image(image.fpga_image, keys.device_key());
  result.plan = hw::parse_manifest(result.contents.manifest);
  result.chain = compute_chain(image.fsbl, image.ssbl, result.contents.manifest, result.contents.firmware);
  return result;
}

namespace {

void install(const BootResult& result, sim::Platform& platform) {
  platform.configure(result.plan);
  const hw::SebLayout layout = result.plan.seb_layout();
  const Bytes header = seb_header(layout);
  for (std::size_t i = 0; i < result.plan.description.enclaves.size(); ++i) {
    if (result.contents.firmware.size() > result.plan.bram_map[i].size) {
      throw Error(ErrorCode::kCapacityExceeded, "firmware does not fit enclave BRAM");
    }
    platform.provision(platform.bram_base(i), result.contents.firmware);
    std::uint64_t seb = platform.seb_base(i);
    platform.provision(seb + layout.header, header);
    platform.provision(seb + layout.m3(), result.chain.m3.view());
  }
}

}  // namespace

BootResult boot_load(ByteView boot_image, const crypto::KeyStore& keys, sim::Platform& platform) {
  platform.reset();
  BootResult result = measure_boot(boot_image, keys);
  try {
    install(result, platform);
  } catch (...) {
    platform.reset();
    throw;
  }
  return result;
}

BootResult reconfigure(ByteView boot_image, const crypto::KeyStore& keys, sim::Platform& platform) {
  // Verify before disturbing the running configuration.
  BootResult result = measure_boot(boot_image, keys);
  try {
    install(result, platform);
  } catch (...) {
    platform.reset();
    throw;
  }
  return result;
}

}  // namespace fpgatee::boot
