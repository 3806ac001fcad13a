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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fpgatee::hw {

// The principal name the description dialect uses for the ARM side of the SoC.
inline constexpr std::string_view kHardcoreSystem = "Hardcore system";

inline constexpr std::uint64_t KiB = 1024;
inline constexpr std::uint64_t MiB = 1024 * KiB;
inline constexpr std::uint64_t GiB = 1024 * MiB;

// Enclave memory is handed out in pages of this size.
inline constexpr std::uint64_t kBramGranularity = 4 * KiB;

// Keys present in the input that the dialect does not define. Only populated
// in lenient mode; values are the raw JSON text.
using UnknownFields = std::map<std::string, std::string>;

struct ProcessorSpec {
  std::string cpu_type;
  std::optional<std::uint64_t> dcache_size;
  std::optional<std::uint64_t> icache_size;
  std::optional<std::string> fpu;
  bool mmu_enabled = false;
  std::optional<std::uint64_t> mmu_page_size;
  bool debugging = false;
  UnknownFields unknown;

  friend bool operator==(const ProcessorSpec&, const ProcessorSpec&) = default;
};

struct SebWindow {
  std::uint32_t base = 0;
  std::uint64_t size = 0;

  std::uint64_t end() const { return std::uint64_t{base} + size; }
  friend bool operator==(const SebWindow&, const SebWindow&) = default;
};

struct EnclaveSpec {
  std::string name;
  ProcessorSpec processor;
  std::uint64_t memory_size = 0;
  SebWindow seb;
  UnknownFields unknown;
  UnknownFields seb_unknown;

  friend bool operator==(const EnclaveSpec&, const EnclaveSpec&) = default;
};

struct PeripheralSpec {
  std::string ptype;
  std::optional<std::string> board_interface;
  std::optional<std::uint32_t> base_address;
  std::optional<std::uint64_t> size;
  std::vector<std::string> access;
  // Free-form string properties such as "Baud Rate".
  std::map<std::string, std::string> extra;
  UnknownFields unknown;

  // BRAM generator blocks become shared on-chip memory rather than MMIO.
  bool is_shared_bram() const;

  friend bool operator==(const PeripheralSpec&, const PeripheralSpec&) = default;
};

struct HardwareDescription {
  std::vector<EnclaveSpec> enclaves;
  std::vector<PeripheralSpec> peripherals;
  UnknownFields unknown;

  // Index of the enclave with this name, if any.
  std::optional<std::size_t> find_enclave(std::string_view name) const;

  friend bool operator==(const HardwareDescription&, const HardwareDescription&) = default;
};

enum class ParseMode {
  kStrict,   // unknown keys are an UnknownField error
  kLenient,  // unknown keys are kept in `unknown` and written back out
};

// Reads the JSON hardware-description dialect ("Enclaves", "Peripherals",
// "Memory Size", ...). Throws MalformedInput, UnknownField, BadSize or
// DuplicateName.
HardwareDescription parse_description(std::string_view json_text,
                                      ParseMode mode = ParseMode::kStrict);

// Writes the same dialect back; parse(serialize(d)) == d.
std::string serialize_description(const HardwareDescription& desc);

// "512KB" -> 524288. Decimal integer with an optional KB/MB/GB binary suffix.
std::uint64_t parse_size(std::string_view text);
// Largest exact binary unit, e.g. 2097152 -> "2MB".
std::string format_size(std::uint64_t bytes);
// "0x20000000" -> 0x20000000. Must fit in 32 bits.
std::uint32_t parse_address(std::string_view text);
// Lowercase, 8 hex digits: "0x001f0000".
std::string format_address(std::uint64_t addr);

}  // namespace fpgatee::hw
