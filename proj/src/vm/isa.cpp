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

#include "fpgatee/vm/isa.hpp"

#include <utility>

namespace fpgatee::vm {
namespace {

constexpr std::pair<Opcode, std::string_view> kMnemonics[] = {
    {Opcode::kLoadi, "loadi"}, {Opcode::kLoad, "load"}, {Opcode::kStore, "store"}, {Opcode::kMov, "mov"},
    {Opcode::kAdd, "add"},     {Opcode::kSub, "sub"},   {Opcode::kMul, "mul"},     {Opcode::kXor, "xor"},
    {Opcode::kAnd, "and"},     {Opcode::kOr, "or"},     {Opcode::kShl, "shl"},     {Opcode::kShr, "shr"},
    {Opcode::kCmp, "cmp"},     {Opcode::kJmp, "jmp"},   {Opcode::kJz, "jz"},       {Opcode::kJnz, "jnz"},
    {Opcode::kCall, "call"},   {Opcode::kRet, "ret"},   {Opcode::kIn, "in"},       {Opcode::kOut, "out"},
    {Opcode::kYield, "yield"}, {Opcode::kHalt, "halt"},
};

}  // namespace

std::array<std::uint8_t, kInstructionSize> Instruction::encode() const {
  return {static_cast<std::uint8_t>(op),
          a,
          b,
          c,
          static_cast<std::uint8_t>(imm),
          static_cast<std::uint8_t>(imm >> 8),
          static_cast<std::uint8_t>(imm >> 16),
          static_cast<std::uint8_t>(imm >> 24)};
}

std::optional<Instruction> decode(const std::uint8_t* bytes) {
  auto op = static_cast<Opcode>(bytes[0]);
  if (mnemonic(op).empty()) return std::nullopt;
  Instruction in;
  in.op = op;
  in.a = bytes[1];
  in.b = bytes[2];
  in.c = bytes[3];
  in.imm = static_cast<std::uint32_t>(bytes[4]) | static_cast<std::uint32_t>(bytes[5]) << 8 |
           static_cast<std::uint32_t>(bytes[6]) << 16 | static_cast<std::uint32_t>(bytes[7]) << 24;
  return in;
}

std::string_view mnemonic(Opcode op) {
  for (const auto& [o, m] : kMnemonics) {
    if (o == op) return m;
  }
  return {};
}

std::optional<Opcode> opcode_for(std::string_view m) {
  for (const auto& [o, name] : kMnemonics) {
    if (name == m) return o;
  }
  return std::nullopt;
}

}  // namespace fpgatee::vm
