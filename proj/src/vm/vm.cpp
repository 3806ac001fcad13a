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

#include "fpgatee/vm/vm.hpp"

#include <algorithm>

namespace fpgatee::vm {
namespace {

std::uint64_t align8(std::uint64_t v) { return (v + 7) & ~std::uint64_t{7}; }

std::uint32_t checked(std::uint64_t v) {
  if (v > 0xffffffffu) throw Error(ErrorCode::kMalformedImage, "image does not fit the 32-bit address space");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

MemoryLayout MemoryLayout::for_image(const ssa::SsaImage& image, std::uint32_t load_base,
                                     std::uint32_t heap_size, std::uint32_t stack_size) {
  MemoryLayout l;
  std::uint64_t at = load_base;
  l.text_base = checked(at);
  l.text_end = checked(at += image.text.size());
  l.rodata_base = checked(at = align8(at));
  l.rodata_end = checked(at += image.rodata.size());
  l.data_base = checked(at = align8(at));
  l.data_end = checked(at += image.data.size());
  l.bss_base = checked(at = align8(at));
  l.bss_end = checked(at += image.bss_size);
  l.heap_base = checked(at = align8(at));
  l.stack_base = checked(at += align8(heap_size));
  l.stack_top = checked(at += align8(stack_size));
  return l;
}

std::string_view fault_name(Fault f) {
  switch (f) {
    case Fault::kNone: return "none";
    case Fault::kIllegalOpcode: return "IllegalOpcode";
    case Fault::kOutOfBounds: return "OutOfBounds";
    case Fault::kStackOverflow: return "StackOverflow";
    case Fault::kBudgetExhausted: return "BudgetExhausted";
  }
  return "unknown";
}

VmState VmState::initial(const MemoryLayout& layout, const ssa::SsaImage& image) {
  VmState s;
  s.regs[kSp] = layout.stack_top;
  s.regs[2] = layout.heap_base;
  s.pc = layout.text_base + image.entry_offset;
  return s;
}

void ArrayBus::read(std::uint32_t addr, std::span<std::uint8_t> out) {
  if (addr < base_ || addr - base_ + out.size() > mem_.size()) {
    throw Error(ErrorCode::kAccessDenied, "array bus read out of range");
  }
  std::copy_n(mem_.begin() + (addr - base_), out.size(), out.begin());
}

void ArrayBus::write(std::uint32_t addr, ByteView data) {
  if (addr < base_ || addr - base_ + data.size() > mem_.size()) {
    throw Error(ErrorCode::kAccessDenied, "array bus write out of range");
  }
  std::copy(data.begin(), data.end(), mem_.begin() + (addr - base_));
}

void load_image(VmBus& bus, const MemoryLayout& layout, const ssa::SsaImage& image) {
  Bytes zeros(layout.window_end() - layout.window_begin());
  bus.write(layout.window_begin(), zeros);
  bus.write(layout.text_base, image.text);
  bus.write(layout.rodata_base, image.rodata);
  bus.write(layout.data_base, image.data);
}

bool Vm::readable(std::uint32_t addr, std::uint32_t len) const {
  std::uint64_t end = std::uint64_t{addr} + len;
  return addr >= layout_.window_begin() && end <= layout_.window_end();
}

bool Vm::writable(std::uint32_t addr, std::uint32_t len) const {
  std::uint64_t end = std::uint64_t{addr} + len;
  return addr >= layout_.writable_begin() && end <= layout_.writable_end();
}

RunResult Vm::fault(Fault f) {
  state_.fault = f;
  return RunResult::kFaulted;
}

RunResult Vm::run(std::uint64_t max_steps) {
  if (state_.halted) return RunResult::kHalted;
  if (state_.fault != Fault::kNone) return RunResult::kFaulted;
  for (std::uint64_t n = 0; n < max_steps; ++n) {
    if (state_.steps >= budget_) return fault(Fault::kBudgetExhausted);
    std::uint32_t pc = state_.pc;
    if (pc < layout_.text_base || pc + std::uint64_t{kInstructionSize} > layout_.text_end ||
        (pc - layout_.text_base) % kInstructionSize != 0) {
      return fault(Fault::kOutOfBounds);
    }
    std::array<std::uint8_t, kInstructionSize> raw{};
    bus_.read(pc, raw);
    std::optional<Instruction> decoded = decode(raw.data());
    if (!decoded) return fault(Fault::kIllegalOpcode);
    const Instruction& in = *decoded;
    std::uint32_t next = pc + kInstructionSize;
    auto operand = [&] { return in.c == kImmOperand ? in.imm : reg(in.c); };

    switch (in.op) {
      case Opcode::kLoadi:
        reg(in.a) = in.imm;
        break;
      case Opcode::kLoad:
      case Opcode::kStore: {
        if (in.c != 1 && in.c != 2 && in.c != 4) return fault(Fault::kIllegalOpcode);
        std::uint32_t addr = reg(in.b) + in.imm;
        if (in.op == Opcode::kLoad) {
          if (!readable(addr, in.c)) return fault(Fault::kOutOfBounds);
          std::array<std::uint8_t, 4> buf{};
          bus_.read(addr, std::span(buf).first(in.c));
          reg(in.a) = buf[0] | buf[1] << 8 | buf[2] << 16 | static_cast<std::uint32_t>(buf[3]) << 24;
        } else {
          if (!writable(addr, in.c)) return fault(Fault::kOutOfBounds);
          std::uint32_t v = reg(in.a);
          std::array<std::uint8_t, 4> buf{static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                                          static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 24)};
          bus_.write(addr, std::span(buf).first(in.c));
        }
        break;
      }
      case Opcode::kMov:
        reg(in.a) = reg(in.b);
        break;
      case Opcode::kAdd: reg(in.a) = reg(in.b) + operand(); break;
      case Opcode::kSub: reg(in.a) = reg(in.b) - operand(); break;
      case Opcode::kMul: reg(in.a) = reg(in.b) * operand(); break;
      case Opcode::kXor: reg(in.a) = reg(in.b) ^ operand(); break;
      case Opcode::kAnd: reg(in.a) = reg(in.b) & operand(); break;
      case Opcode::kOr: reg(in.a) = reg(in.b) | operand(); break;
      case Opcode::kShl: reg(in.a) = reg(in.b) << (operand() & 31); break;
      case Opcode::kShr: reg(in.a) = reg(in.b) >> (operand() & 31); break;
      case Opcode::kCmp: {
        std::uint32_t x = reg(in.b), y = operand();
        reg(in.a) = x == y ? 0 : (x < y ? 1 : 2);
        break;
      }
      case Opcode::kJmp: next = in.imm; break;
      case Opcode::kJz:
        if (reg(in.a) == 0) next = in.imm;
        break;
      case Opcode::kJnz:
        if (reg(in.a) != 0) next = in.imm;
        break;
      case Opcode::kCall:
        reg(kLr) = next;
        next = in.imm;
        break;
      case Opcode::kRet: next = reg(kLr); break;
      case Opcode::kIn: {
        std::uint32_t dst = reg(in.b), max = reg(in.c);
        if (!writable(dst, max)) return fault(Fault::kOutOfBounds);
        std::optional<Bytes> chunk = io_.input(max);
        if (!chunk) return RunResult::kAwaitingInput;
        bus_.write(dst, *chunk);
        reg(in.a) = static_cast<std::uint32_t>(chunk->size());
        break;
      }
      case Opcode::kOut: {
        std::uint32_t src = reg(in.a), len = reg(in.b);
        if (!readable(src, len)) return fault(Fault::kOutOfBounds);
        Bytes buf(len);
        bus_.read(src, buf);
        if (!io_.output(buf)) return fault(Fault::kOutOfBounds);
        break;
      }
      case Opcode::kYield:
      case Opcode::kHalt:
        break;
    }
    if (state_.regs[kSp] < layout_.stack_base || state_.regs[kSp] > layout_.stack_top) {
      return fault(Fault::kStackOverflow);
    }
    state_.pc = next;
    ++state_.steps;
    if (in.op == Opcode::kHalt) {
      state_.halted = true;
      return RunResult::kHalted;
    }
    if (in.op == Opcode::kYield) return RunResult::kYielded;
  }
  return RunResult::kRunning;
}

}  // namespace fpgatee::vm
