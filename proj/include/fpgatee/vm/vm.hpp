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
#include <span>
#include <string_view>

#include "fpgatee/bytes.hpp"
#include "fpgatee/ssa/image.hpp"
#include "fpgatee/vm/isa.hpp"

namespace fpgatee::vm {

inline constexpr std::uint32_t kDefaultLoadBase = 0x4000;
inline constexpr std::uint32_t kDefaultHeapSize = 2048;
inline constexpr std::uint32_t kDefaultStackSize = 2048;
inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000;

// Where an image lives once loaded. Sections are 8-byte aligned and packed in
// order text, rodata, data, bss, heap, stack. Addresses are offsets into the
// enclave's BRAM.
struct MemoryLayout {
  std::uint32_t text_base = 0;
  std::uint32_t text_end = 0;
  std::uint32_t rodata_base = 0;
  std::uint32_t rodata_end = 0;
  std::uint32_t data_base = 0;
  std::uint32_t data_end = 0;
  std::uint32_t bss_base = 0;
  std::uint32_t bss_end = 0;
  std::uint32_t heap_base = 0;
  std::uint32_t stack_base = 0;  // lowest valid stack address
  std::uint32_t stack_top = 0;   // initial sp, one past the window

  static MemoryLayout for_image(const ssa::SsaImage& image, std::uint32_t load_base = kDefaultLoadBase,
                                std::uint32_t heap_size = kDefaultHeapSize,
                                std::uint32_t stack_size = kDefaultStackSize);

  std::uint32_t window_begin() const { return text_base; }
  std::uint32_t window_end() const { return stack_top; }
  // data, bss, heap and stack: everything an SSA may write.
  std::uint32_t writable_begin() const { return data_base; }
  std::uint32_t writable_end() const { return stack_top; }

  friend bool operator==(const MemoryLayout&, const MemoryLayout&) = default;
};

enum class Fault : std::uint8_t {
  kNone,
  kIllegalOpcode,
  kOutOfBounds,
  kStackOverflow,
  kBudgetExhausted,
};
std::string_view fault_name(Fault f);

struct VmState {
  std::array<std::uint32_t, kRegisterCount> regs{};
  std::uint32_t pc = 0;
  std::uint64_t steps = 0;
  bool halted = false;
  Fault fault = Fault::kNone;

  static VmState initial(const MemoryLayout& layout, const ssa::SsaImage& image);
  friend bool operator==(const VmState&, const VmState&) = default;
};

enum class RunResult {
  kRunning,         // slice used up
  kYielded,         // YIELD retired
  kAwaitingInput,   // IN found no data with more expected; not retired
  kHalted,
  kFaulted,
};

class VmBus {
 public:
  virtual ~VmBus() = default;
  virtual void read(std::uint32_t addr, std::span<std::uint8_t> out) = 0;
  virtual void write(std::uint32_t addr, ByteView data) = 0;
};

class VmIo {
 public:
  virtual ~VmIo() = default;
  // nullopt: nothing buffered but more is coming. Empty: end of input.
  virtual std::optional<Bytes> input(std::uint32_t max) = 0;
  // false if the output buffer cannot take the bytes.
  virtual bool output(ByteView data) = 0;
};

// A flat memory covering [base, base + size), for tests and offline runs.
class ArrayBus final : public VmBus {
 public:
  ArrayBus(std::uint32_t base, std::uint32_t size) : base_(base), mem_(size) {}
  void read(std::uint32_t addr, std::span<std::uint8_t> out) override;
  void write(std::uint32_t addr, ByteView data) override;
  const Bytes& memory() const { return mem_; }

 private:
  std::uint32_t base_;
  Bytes mem_;
};

// Writes sections at their layout addresses and zero-fills bss, heap and stack.
void load_image(VmBus& bus, const MemoryLayout& layout, const ssa::SsaImage& image);

class Vm {
 public:
  Vm(const MemoryLayout& layout, VmState& state, VmBus& bus, VmIo& io,
     std::uint64_t budget = kDefaultStepBudget)
      : layout_(layout), state_(state), bus_(bus), io_(io), budget_(budget) {}

  // Executes at most `max_steps` instructions.
  RunResult run(std::uint64_t max_steps);

 private:
  RunResult fault(Fault f);
  bool readable(std::uint32_t addr, std::uint32_t len) const;
  bool writable(std::uint32_t addr, std::uint32_t len) const;
  std::uint32_t& reg(std::uint8_t r) { return state_.regs[r & 0x0f]; }

  MemoryLayout layout_;
  VmState& state_;
  VmBus& bus_;
  VmIo& io_;
  std::uint64_t budget_;
};

}  // namespace fpgatee::vm
