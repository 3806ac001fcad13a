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
#include <string_view>

namespace fpgatee::hw {

inline constexpr std::string_view kSebMagic = "BYOTSEB1";
inline constexpr std::uint32_t kSebVersion = 1;

// Capacities of the variable-size SEB regions. Fixed at plan time.
struct SebRegionSizes {
  std::uint32_t ssa_star = 64 * 1024;
  std::uint32_t input = 8 * 1024;
  std::uint32_t output = 8 * 1024;

  friend bool operator==(const SebRegionSizes&, const SebRegionSizes&) = default;
};

// Firmware status word values.
enum class SebStatus : std::uint32_t { kIdle = 0, kBusy = 1, kDone = 2, kError = 3 };

// Bits of the UA-owned control word.
inline constexpr std::uint32_t kUaInputMore = 1u << 0;  // further input chunks will follow

// Bits of the firmware-owned control word.
inline constexpr std::uint32_t kFwAwaitingInput = 1u << 0;
inline constexpr std::uint32_t kFwSuspended = 1u << 1;  // output holds a session blob
inline constexpr std::uint32_t kFwReportPre = 1u << 2;
inline constexpr std::uint32_t kFwReportPost = 1u << 3;

// Byte offsets of every SEB region relative to the window base. Regions are
// laid out back to back in this order:
//
//   header | ssa_star | input | output | chal | pre_exec_att | post_exec_att | other
//
// `other` holds m3 followed by the status and control words.
struct SebLayout {
  static constexpr std::uint32_t kHeaderSize = 128;
  static constexpr std::uint32_t kChalSize = 64;
  static constexpr std::uint32_t kDigestSize = 64;
  static constexpr std::uint32_t kOtherSize = 128;
  static constexpr std::uint32_t kRegionCount = 8;

  // Offsets inside `other`.
  static constexpr std::uint32_t kM3 = 0;
  static constexpr std::uint32_t kStatus = 64;
  static constexpr std::uint32_t kSsaStarLen = 68;
  static constexpr std::uint32_t kInputLen = 72;
  static constexpr std::uint32_t kOutputLen = 76;
  static constexpr std::uint32_t kUaFlags = 80;
  static constexpr std::uint32_t kErrorCode = 84;
  static constexpr std::uint32_t kFwFlags = 88;
  // Written non-zero by the UA when NewData is signalled by polling.
  static constexpr std::uint32_t kNewDataPoll = 92;

  SebRegionSizes sizes;
  std::uint32_t header = 0;
  std::uint32_t ssa_star = 0;
  std::uint32_t input = 0;
  std::uint32_t output = 0;
  std::uint32_t chal = 0;
  std::uint32_t pre_exec_att = 0;
  std::uint32_t post_exec_att = 0;
  std::uint32_t other = 0;
  std::uint32_t total = 0;

  static SebLayout compute(const SebRegionSizes& sizes) {
    SebLayout l;
    l.sizes = sizes;
    std::uint32_t off = 0;
    l.header = off;
    off += kHeaderSize;
    l.ssa_star = off;
    off += sizes.ssa_star;
    l.input = off;
    off += sizes.input;
    l.output = off;
    off += sizes.output;
    l.chal = off;
    off += kChalSize;
    l.pre_exec_att = off;
    off += kDigestSize;
    l.post_exec_att = off;
    off += kDigestSize;
    l.other = off;
    off += kOtherSize;
    l.total = off;
    return l;
  }

  std::uint32_t m3() const { return other + kM3; }
  std::uint32_t status() const { return other + kStatus; }
  std::uint32_t ssa_star_len() const { return other + kSsaStarLen; }
  std::uint32_t input_len() const { return other + kInputLen; }
  std::uint32_t output_len() const { return other + kOutputLen; }
  std::uint32_t ua_flags() const { return other + kUaFlags; }
  std::uint32_t error_code() const { return other + kErrorCode; }
  std::uint32_t fw_flags() const { return other + kFwFlags; }
  std::uint32_t new_data_poll() const { return other + kNewDataPoll; }
};

}  // namespace fpgatee::hw
