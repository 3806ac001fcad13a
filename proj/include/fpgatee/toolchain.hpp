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

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fpgatee/bytes.hpp"
#include "fpgatee/crypto/keystore.hpp"
#include "fpgatee/verifier/verifier.hpp"

namespace fpgatee::toolchain {

// The two boot loaders named by a system BIF:
//
//   the_ROM_image:
//   {
//     [bootloader] fsbl.elf
//     u-boot.elf
//   }
//
// Relative paths resolve against `base_dir`. Throws MalformedInput.
struct BifEntries {
  std::filesystem::path fsbl;
  std::filesystem::path ssbl;
};
BifEntries parse_bif(std::string_view text, const std::filesystem::path& base_dir);

// Synthesis script -> bitstream manifest.
Bytes manifest_from_script(std::string_view script_text);

inline constexpr std::string_view kBootImageName = "BYOTEE.BIN";
inline constexpr std::string_view kSsaExtension = ".pssa";

// SD-card style device directory: boot/BYOTEE.BIN and root/<name>.pssa.
struct DeviceLayout {
  std::filesystem::path dir;

  std::filesystem::path boot_image() const { return dir / "boot" / kBootImageName; }
  std::filesystem::path ssa(std::string_view name) const;
  std::vector<std::string> ssa_names() const;
};

// Checks every artifact's framing, then copies them into `dir`.
DeviceLayout deploy(const std::filesystem::path& dir, ByteView boot_image,
                    const std::vector<std::pair<std::string, Bytes>>& ssas);

// A golden directory has the deploy layout. The transcript is left empty.
// Missing files are MissingGolden.
verifier::GoldenSet load_golden(const DeviceLayout& golden, std::string_view ssa, const crypto::KeyStore& keys);

// Splits `data` into chunks of at most `chunk` bytes; 0 means one chunk.
std::vector<Bytes> split_input(ByteView data, std::size_t chunk);

}  // namespace fpgatee::toolchain
