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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fpgatee/crypto/crypto.hpp"

namespace fpgatee::crypto {

inline constexpr std::string_view kKeyFileMagic = "BYOTKEY1";

// Device key k_d, the developer whitelist k_u, and the attestation key
// derived from k_d. Immutable once built.
//
// Key file layout: magic "BYOTKEY1", then records of
//   tag(1) | id-len(2, LE) | id | key(32)
// with tag 0x01 for the device key (empty id) and 0x02 for developer keys.
class KeyStore {
 public:
  static constexpr std::uint8_t kDeviceTag = 0x01;
  static constexpr std::uint8_t kDeveloperTag = 0x02;
  static constexpr std::string_view kAttestationLabel = "att";

  KeyStore(const Key& device_key, std::map<std::string, Key, std::less<>> developer_keys);

  static KeyStore generate(RandomSource& rng, const std::vector<std::string>& developer_ids);
  static KeyStore parse(ByteView file);
  static KeyStore load(const std::filesystem::path& path);

  Bytes serialize() const;
  void save(const std::filesystem::path& path) const;

  const Key& device_key() const { return device_key_; }
  const Key& attestation_key() const { return attestation_key_; }
  bool has_developer(std::string_view id) const { return developer_keys_.contains(id); }
  // Throws UnknownDeveloper.
  const Key& developer_key(std::string_view id) const;
  std::vector<std::string> developer_ids() const;

 private:
  Key device_key_;
  Key attestation_key_;
  std::map<std::string, Key, std::less<>> developer_keys_;
};

}  // namespace fpgatee::crypto
