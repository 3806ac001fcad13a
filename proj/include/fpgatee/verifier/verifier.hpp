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

#include <array>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fpgatee/boot/boot.hpp"
#include "fpgatee/bytes.hpp"
#include "fpgatee/crypto/crypto.hpp"
#include "fpgatee/crypto/keystore.hpp"

namespace fpgatee::verifier {

inline constexpr std::string_view kReportMagic = "BYOTRPT1";
inline constexpr std::size_t kChalSize = 64;
using Challenge = std::array<std::uint8_t, kChalSize>;

struct Report {
  Challenge chal{};
  crypto::Digest m3;
  crypto::Digest pre;
  std::optional<crypto::Digest> post;

  // magic | chal | m3 | pre | post flag | post (if flagged)
  Bytes serialize() const;
  // Throws BadMagic or MalformedInput.
  static Report parse(ByteView bytes);
  friend bool operator==(const Report&, const Report&) = default;
};

// Single-use challenges. Every verification consumes the challenge it names,
// whatever the verdict.
class ChallengeLedger {
 public:
  Challenge issue(crypto::RandomSource& rng);
  // Throws ReplayDetected if `chal` was never issued or was already used.
  void consume(const Challenge& chal);
  bool outstanding(const Challenge& chal) const;

 private:
  mutable std::mutex mu_;
  std::set<Challenge> issued_;
  std::set<Challenge> used_;
};

// Known-good artifacts for one deployment.
struct GoldenSet {
  std::optional<Bytes> fsbl;
  std::optional<Bytes> ssbl;
  std::optional<Bytes> manifest;
  std::optional<Bytes> firmware;
  std::optional<Bytes> protected_ssa;
  std::optional<crypto::KeyStore> keys;  // attestation key and the SSA developer's key
  std::vector<Bytes> transcript;          // input chunks in order

  // Fills everything but the SSA and transcript from a boot image.
  static GoldenSet from_boot_image(ByteView boot_image, const crypto::KeyStore& keys);
};

struct Verdict {
  bool accept = false;
  std::string reason;  // empty on accept
};

// Expected values recomputed from a golden set. Throws MissingGolden.
crypto::Digest expected_m3(const GoldenSet& golden);
crypto::Digest expected_pre(const GoldenSet& golden, const Challenge& chal);
crypto::Digest expected_post(const GoldenSet& golden, const Challenge& chal, ByteView output);

class Verifier {
 public:
  Challenge issue_challenge(crypto::RandomSource& rng) { return ledger_.issue(rng); }

  // Throws ReplayDetected or MissingGolden.
  Verdict verify_pre(const Report& report, const GoldenSet& golden);
  // Checks pre as well.
  Verdict verify_post(const Report& report, const GoldenSet& golden, ByteView claimed_output);

  ChallengeLedger& ledger() { return ledger_; }

 private:
  ChallengeLedger ledger_;
};

}  // namespace fpgatee::verifier
