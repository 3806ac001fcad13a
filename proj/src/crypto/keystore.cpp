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

#include "fpgatee/crypto/keystore.hpp"

#include <fstream>
#include <iterator>
#include <optional>

namespace fpgatee::crypto {

KeyStore::KeyStore(const Key& device_key, std::map<std::string, Key, std::less<>> developer_keys)
    : device_key_(device_key),
      attestation_key_(derive_key(device_key, kAttestationLabel)),
      developer_keys_(std::move(developer_keys)) {
  for (const auto& [id, key] : developer_keys_) {
    if (id.empty()) throw Error(ErrorCode::kBadKey, "developer id must be non-empty");
  }
}

KeyStore KeyStore::generate(RandomSource& rng, const std::vector<std::string>& developer_ids) {
  Key device = rng.array<kKeySize>();
  std::map<std::string, Key, std::less<>> devs;
  for (const auto& id : developer_ids) {
    if (!devs.emplace(id, rng.array<kKeySize>()).second) {
      throw Error(ErrorCode::kBadKey, "duplicate developer id '" + id + "'");
    }
  }
  return KeyStore(device, std::move(devs));
}

const Key& KeyStore::developer_key(std::string_view id) const {
  auto it = developer_keys_.find(id);
  if (it == developer_keys_.end()) {
    throw Error(ErrorCode::kUnknownDeveloper, "developer '" + std::string(id) + "' not whitelisted");
  }
  return it->second;
}

std::vector<std::string> KeyStore::developer_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, key] : developer_keys_) ids.push_back(id);
  return ids;
}

Bytes KeyStore::serialize() const {
  ByteWriter w;
  w.raw(kKeyFileMagic);
  w.u8(kDeviceTag).lp16("").raw(device_key_);
  for (const auto& [id, key] : developer_keys_) w.u8(kDeveloperTag).lp16(id).raw(key);
  return std::move(w).take();
}

KeyStore KeyStore::parse(ByteView file) {
  ByteReader r(file, ErrorCode::kBadKey);
  if (r.remaining() < kKeyFileMagic.size() || to_string(r.raw(kKeyFileMagic.size())) != kKeyFileMagic) {
    throw Error(ErrorCode::kBadMagic, "not a key file");
  }
  std::optional<Key> device;
  std::map<std::string, Key, std::less<>> devs;
  while (!r.done()) {
    std::uint8_t tag = r.u8();
    std::string id = r.lp16();
    Key key{};
    ByteView k = r.raw(kKeySize);
    std::copy(k.begin(), k.end(), key.begin());
    if (tag == kDeviceTag) {
      if (device) throw Error(ErrorCode::kBadKey, "key file holds two device keys");
      device = key;
    } else if (tag == kDeveloperTag) {
      if (!devs.emplace(id, key).second) {
        throw Error(ErrorCode::kBadKey, "duplicate developer id '" + id + "'");
      }
    } else {
      throw Error(ErrorCode::kBadKey, "unknown key record tag " + std::to_string(tag));
    }
  }
  if (!device) throw Error(ErrorCode::kBadKey, "key file has no device key");
  return KeyStore(*device, std::move(devs));
}

KeyStore KeyStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open key file " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  KeyStore ks = parse(data);
  secure_zero(data);
  return ks;
}

void KeyStore::save(const std::filesystem::path& path) const {
  Bytes data = serialize();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  secure_zero(data);
  if (!out) throw Error(ErrorCode::kIo, "cannot write key file " + path.string());
}

}  // namespace fpgatee::crypto
