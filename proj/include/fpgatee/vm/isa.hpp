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
#include <cstdint>
#include <optional>
#include <string_view>

namespace fpgatee::vm {

// Fixed 8-byte little-endian instructions:
//   byte 0 opcode, bytes 1..3 operands a, b, c, bytes 4..7 imm32.
// For ALU and CMP, c == kImmOperand selects imm instead of r[c].
// For LOAD and STORE, c is the access width (1, 2 or 4).
inline constexpr std::size_t kInstructionSize = 8;
inline constexpr std::size_t kRegisterCount = 16;
inline constexpr std::uint8_t kImmOperand = 0xff;
inline constexpr unsigned kSp = 1;
inline constexpr unsigned kLr = 14;

enum class Opcode : std::uint8_t {
  kLoadi = 0x01,
  kLoad = 0x02,
  kStore = 0x03,
  kMov = 0x04,
  kAdd = 0x10,
  kSub = 0x11,
  kMul = 0x12,
  kXor = 0x13,
  kAnd = 0x14,
  kOr = 0x15,
  kShl = 0x16,
  kShr = 0x17,
  kCmp = 0x18,  // r[a] = 0 if equal, 1 if less, 2 if greater (unsigned)
  kJmp = 0x20,
  kJz = 0x21,
  kJnz = 0x22,
  kCall = 0x23,
  kRet = 0x24,
  kIn = 0x30,   // up to r[c] bytes into mem[r[b]], r[a] = count
  kOut = 0x31,  // mem[r[a]] .. + r[b]
  kYield = 0x32,
  kHalt = 0x3f,
};

struct Instruction {
  Opcode op = Opcode::kHalt;
  std::uint8_t a = 0;
  std::uint8_t b = 0;
  std::uint8_t c = 0;
  std::uint32_t imm = 0;

  std::array<std::uint8_t, kInstructionSize> encode() const;
  friend bool operator==(const Instruction&, const Instruction&) = default;
};

// nullopt for an unknown opcode byte.
std::optional<Instruction> decode(const std::uint8_t* bytes);

std::string_view mnemonic(Opcode op);
std::optional<Opcode> opcode_for(std::string_view mnemonic);

}  // namespace fpgatee::vm
