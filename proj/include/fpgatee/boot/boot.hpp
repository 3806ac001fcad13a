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

#include "fpgatee/bytes.hpp"
#include "fpgatee/crypto/crypto.hpp"
#include "fpgatee/crypto/keystore.hpp"
#include "fpgatee/hw/plan.hpp"
#include "fpgatee/sim/platform.hpp"

namespace fpgatee::boot {

inline constexpr std::string_view kFpgaImageMagic = "BYOTFPGA";
inline constexpr std::string_view kBootImageMagic = "BYOTBOOT";

struct MeasurementChain {
  crypto::Digest m1;
  crypto::Digest m2;
  crypto::Digest m3;

  friend bool operator==(const MeasurementChain&, const MeasurementChain&) = default;
};

// m1 = H(fsbl), m2 = H(m1 | ssbl), m3 = H(m2 | bs | fw)
MeasurementChain compute_chain(ByteView fsbl, ByteView ssbl, ByteView bitstream, ByteView firmware);

struct FpgaContents {
  Bytes manifest;
  Bytes firmware;

  friend bool operator==(const FpgaContents&, const FpgaContents&) = default;
};

// magic | iv | lp32 ciphertext | tag, the tag keyed by the device key over
// every preceding byte. Plaintext is lp32 manifest | lp32 firmware.
Bytes seal_fpga_image(const FpgaContents& contents, const crypto::Key& device_key, crypto::RandomSource& rng);
Bytes seal_fpga_image(const FpgaContents& contents, const crypto::Key& device_key, const crypto::Iv& iv);
// Throws BadMagic, AuthFailure or MalformedImage.
// Structure only, no key needed: magic, IV, ciphertext length, tag.
// Throws BadMagic or MalformedImage.
void check_fpga_image_framing(ByteView image);
FpgaContents open_fpga_image(ByteView image, const crypto::Key& device_key);

struct BootImage {
  Bytes fsbl;
  Bytes ssbl;
  Bytes fpga_image;

  // magic | lp32 fsbl | lp32 ssbl | lp32 fpga image
  Bytes serialize() const;
  // Throws BadMagic or MalformedInput (truncation, trailing bytes).
  static BootImage parse(ByteView bytes);
  friend bool operator==(const BootImage&, const BootImage&) = default;
};

struct BootResult {
  MeasurementChain chain;
  FpgaContents contents;
  hw::ValidatedPlan plan;
};

// Verifies and decrypts the FPGA image, decodes the manifest and measures
// the chain. Touches nothing.
BootResult measure_boot(ByteView boot_image, const crypto::KeyStore& keys);

// measure_boot, then configures `platform` from the manifest, loads the
// firmware into every enclave's BRAM at offset 0 and places m3 in every SEB.
// On failure the platform is left unconfigured.
BootResult boot_load(ByteView boot_image, const crypto::KeyStore& keys, sim::Platform& platform);

// The dynamic bootstrap path: same as boot_load on an already running
// platform. Old SEB contents, m3 included, are wiped.
BootResult reconfigure(ByteView boot_image, const crypto::KeyStore& keys, sim::Platform& platform);

// SEB header: magic | version | region count | (offset, size) per region.
Bytes seb_header(const hw::SebLayout& layout);

}  // namespace fpgatee::boot
