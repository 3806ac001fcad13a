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

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fpgatee/hw/description.hpp"
#include "fpgatee/hw/seb_layout.hpp"

namespace fpgatee::hw {

// Device-side limits that the description is planned against.
struct PlatformLimits {
  std::uint64_t bram_capacity = 0;
  std::uint64_t dram_base = 0;
  std::uint64_t dram_size = 0;
  SebRegionSizes seb_regions;

  // XC7Z007S: 0.225 MB of BRAM and 512 MB of DRAM at address 0.
  static PlatformLimits zynq7000();
  // A roomy simulated device: 128 MiB of BRAM and the full 32-bit DRAM space.
  static PlatformLimits desk();

  friend bool operator==(const PlatformLimits&, const PlatformLimits&) = default;
};

enum Permission : std::uint8_t {
  kPermRead = 1u << 0,
  kPermWrite = 1u << 1,
  kPermInterrupt = 1u << 2,
};
using PermissionSet = std::uint8_t;

std::string permission_string(PermissionSet perms);  // e.g. "rw-"

struct ResourceId {
  enum class Kind : std::uint8_t {
    kEnclaveBram,
    kSharedBram,
    kSeb,
    kPeripheral,
    kInterruptController,
  };
  Kind kind = Kind::kEnclaveBram;
  // Enclave index for BRAM/SEB/interrupt controller, peripheral index otherwise.
  std::uint32_t index = 0;

  std::string to_string() const;  // "bram:0", "seb:2", "periph:1", ...
  friend auto operator<=>(const ResourceId&, const ResourceId&) = default;
};

// Principal names: "Hardcore system", an enclave name, or
// peripheral_principal(i) for a bus master peripheral.
std::string peripheral_principal(std::size_t index);

// (principal, resource) -> permissions. Absent entries grant nothing.
class AccessMatrix {
 public:
  void grant(const std::string& principal, ResourceId resource, PermissionSet perms);
  PermissionSet lookup(std::string_view principal, ResourceId resource) const;
  bool allows(std::string_view principal, ResourceId resource, PermissionSet needed) const {
    return (lookup(principal, resource) & needed) == needed;
  }
  // Principals holding any permission on `resource`.
  std::set<std::string> principals_for(ResourceId resource) const;

  const std::map<std::pair<std::string, ResourceId>, PermissionSet>& entries() const {
    return entries_;
  }

  friend bool operator==(const AccessMatrix&, const AccessMatrix&) = default;

 private:
  std::map<std::pair<std::string, ResourceId>, PermissionSet> entries_;
};

struct BramRange {
  std::uint64_t base = 0;
  std::uint64_t size = 0;

  std::uint64_t end() const { return base + size; }
  friend bool operator==(const BramRange&, const BramRange&) = default;
};

struct SharedBram {
  std::size_t peripheral = 0;  // index into description.peripherals
  BramRange range;
  std::vector<std::string> principals;

  friend bool operator==(const SharedBram&, const SharedBram&) = default;
};

// MMIO window of a non-memory peripheral.
struct MmioWindow {
  std::size_t peripheral = 0;
  std::uint64_t base = 0;
  std::uint64_t size = 0;

  friend bool operator==(const MmioWindow&, const MmioWindow&) = default;
};

struct ValidatedPlan {
  HardwareDescription description;
  PlatformLimits limits;
  std::vector<BramRange> bram_map;  // parallel to description.enclaves
  std::vector<SharedBram> shared_bram;
  std::vector<MmioWindow> mmio;
  AccessMatrix access;

  SebLayout seb_layout() const { return SebLayout::compute(limits.seb_regions); }
  std::vector<std::string> principals() const;  // hardcore, enclaves, peripherals
  std::vector<ResourceId> resources() const;

  friend bool operator==(const ValidatedPlan&, const ValidatedPlan&) = default;
};

// Peripherals without a declared address get 4 KiB register windows from here.
inline constexpr std::uint64_t kMmioAutoBase = 0x40000000;
inline constexpr std::uint64_t kMmioAutoStride = 0x1000;

// Allocates BRAM and derives the access matrix. Enclaves are placed first-fit
// in declaration order, 4 KiB aligned, around shared BRAM regions that carry a
// fixed base address. Throws CapacityExceeded, UnknownPrincipal or
// SharedRegionConflict. SEB windows that overlap each other are allowed here
// (the plan still describes the hardware) but cannot be configured on a
// platform; see seb_overlaps.
ValidatedPlan validate(const HardwareDescription& desc, const PlatformLimits& limits);

// One message per pair of enclaves whose SEB windows intersect.
std::vector<std::string> seb_overlaps(const HardwareDescription& desc);

// Canonical JSON form of a plan: stable key order, lowercase hex addresses.
// Also embeds the description and limits so parse_plan can rebuild it.
std::string serialize_plan(const ValidatedPlan& plan);

// Inverse of serialize_plan. Re-validates and checks the stored allocation
// matches. Throws MalformedInput on mismatch.
ValidatedPlan parse_plan(std::string_view json_text);

}  // namespace fpgatee::hw
