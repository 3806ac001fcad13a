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

#include <gtest/gtest.h>

#include <random>

#include "fpgatee/hw/description.hpp"
#include "fpgatee/hw/plan.hpp"
#include "test_support.hpp"

namespace fpgatee::hw {
namespace {

using fpgatee::testing::random_description;
using fpgatee::testing::random_limits;
using fpgatee::testing::three_enclave_description;
using K = ResourceId::Kind;

constexpr const char* kMinimal = R"({"Enclaves":[{"Name":"E","Processor":{"Type":"MicroBlaze 32bit"},
  "Memory Size":"4KB","Shared DRAM SEB":{"Base":"0x10000000","Size":"1MB"}}],"Peripherals":[]})";

std::string with_memory_size(std::string_view size) {
  std::string s = kMinimal;
  s.replace(s.find("4KB"), 3, size);
  return s;
}

// Three enclave description with the SEBs moved apart so validation can get
// past the SEB checks.
HardwareDescription three_enclaves_disjoint_sebs() {
  HardwareDescription d = parse_description(three_enclave_description());
  d.enclaves[0].seb = {0x20000000, 2 * MiB};
  d.enclaves[1].seb = {0x30000000, 128 * MiB};
  d.enclaves[2].seb = {0x40000000, 256 * MiB};
  return d;
}

TEST(ParseDescriptionTest, ThreeEnclaveExample) {
  HardwareDescription d = parse_description(three_enclave_description());
  ASSERT_EQ(d.enclaves.size(), 3u);
  EXPECT_EQ(d.enclaves[0].name, "Enclave-1");
  EXPECT_EQ(d.enclaves[1].name, "Enclave-2");
  EXPECT_EQ(d.enclaves[2].name, "Enclave-3");

  const EnclaveSpec& e1 = d.enclaves[0];
  EXPECT_EQ(e1.processor.cpu_type, "MicroBlaze 32bit");
  EXPECT_TRUE(e1.processor.debugging);
  EXPECT_EQ(e1.memory_size, 512 * KiB);
  EXPECT_EQ(e1.seb.base, 0x20000000u);
  EXPECT_EQ(e1.seb.size, 2 * MiB);

  const EnclaveSpec& e2 = d.enclaves[1];
  EXPECT_EQ(e2.memory_size, 32 * MiB);
  EXPECT_EQ(e2.processor.dcache_size, 16 * KiB);
  EXPECT_EQ(e2.processor.icache_size, 16 * KiB);
  EXPECT_EQ(e2.processor.fpu, "F32");
  EXPECT_FALSE(e2.processor.debugging);
  EXPECT_EQ(e2.seb.base, 0x20000800u);
  EXPECT_EQ(e2.seb.size, 128 * MiB);

  const EnclaveSpec& e3 = d.enclaves[2];
  EXPECT_EQ(e3.memory_size, 64 * MiB);
  EXPECT_TRUE(e3.processor.mmu_enabled);
  EXPECT_EQ(e3.processor.mmu_page_size, 4 * KiB);
  EXPECT_EQ(e3.processor.fpu, "AXU");
  EXPECT_EQ(e3.seb.base, 0x20020800u);
  EXPECT_EQ(e3.seb.size, 256 * MiB);

  ASSERT_EQ(d.peripherals.size(), 3u);
  EXPECT_EQ(d.peripherals[0].ptype, "AXI Gpio");
  EXPECT_EQ(d.peripherals[0].board_interface, "Btns 2bits");
  EXPECT_EQ(d.peripherals[0].access, (std::vector<std::string>{"Hardcore system", "Enclave-2"}));
  EXPECT_EQ(d.peripherals[1].ptype, "Uart Lite 8bit");
  EXPECT_EQ(d.peripherals[1].access, std::vector<std::string>{"Enclave-1"});
  EXPECT_EQ(d.peripherals[1].extra.at("Baud Rate"), "115200");
  EXPECT_EQ(d.peripherals[2].base_address, 0x1F0000u);
  EXPECT_EQ(d.peripherals[2].size, 2 * MiB);
  EXPECT_TRUE(d.peripherals[2].is_shared_bram());
  EXPECT_FALSE(d.peripherals[0].is_shared_bram());
}

TEST(ParseDescriptionTest, MinimalDescription) {
  HardwareDescription d = parse_description(kMinimal);
  EXPECT_EQ(d.enclaves.size(), 1u);
  EXPECT_TRUE(d.peripherals.empty());
  EXPECT_EQ(d.enclaves[0].memory_size, 4 * KiB);
}

TEST(ParseDescriptionTest, MemorySizeMustBeWholePowerOfTwoPages) {
  EXPECT_FPGATEE_ERROR(parse_description(with_memory_size("3KB")), ErrorCode::kBadSize);
  EXPECT_FPGATEE_ERROR(parse_description(with_memory_size("2KB")), ErrorCode::kBadSize);
  EXPECT_FPGATEE_ERROR(parse_description(with_memory_size("12KB")), ErrorCode::kBadSize);
  EXPECT_FPGATEE_ERROR(parse_description(with_memory_size("12XB")), ErrorCode::kBadSize);
  EXPECT_EQ(parse_description(with_memory_size("128KB")).enclaves[0].memory_size, 128 * KiB);
}

TEST(ParseDescriptionTest, SizeAndAddressGrammar) {
  EXPECT_EQ(parse_size("512KB"), 512 * KiB);
  EXPECT_EQ(parse_size("2MB"), 2 * MiB);
  EXPECT_EQ(parse_size("1GB"), GiB);
  EXPECT_EQ(parse_size("115200"), 115200u);
  EXPECT_FPGATEE_ERROR(parse_size("KB"), ErrorCode::kBadSize);
  EXPECT_FPGATEE_ERROR(parse_size("2 MB"), ErrorCode::kBadSize);
  EXPECT_FPGATEE_ERROR(parse_size("99999999999999999999KB"), ErrorCode::kBadSize);
  EXPECT_EQ(parse_address("0x20000000"), 0x20000000u);
  EXPECT_EQ(parse_address("0x1F0000"), 0x1F0000u);
  EXPECT_FPGATEE_ERROR(parse_address("0x100000000"), ErrorCode::kBadSize);
  EXPECT_FPGATEE_ERROR(parse_address("4096"), ErrorCode::kBadSize);
  EXPECT_EQ(format_address(0x1F0000), "0x001f0000");
  EXPECT_EQ(format_size(2 * MiB), "2MB");
  EXPECT_EQ(format_size(1536), "1536");
}

TEST(ParseDescriptionTest, ErrorKinds) {
  EXPECT_FPGATEE_ERROR(parse_description("{\"Enclaves\": ["), ErrorCode::kMalformedInput);
  EXPECT_FPGATEE_ERROR(parse_description(R"({"Enclaves": []})"), ErrorCode::kMalformedInput);

  std::string dup = R"({"Enclaves":[
    {"Name":"A","Processor":{"Type":"x"},"Memory Size":"4KB","Shared DRAM SEB":{"Base":"0x0","Size":"1MB"}},
    {"Name":"A","Processor":{"Type":"x"},"Memory Size":"4KB","Shared DRAM SEB":{"Base":"0x200000","Size":"1MB"}}]})";
  EXPECT_FPGATEE_ERROR(parse_description(dup), ErrorCode::kDuplicateName);

  std::string page_without_mmu = kMinimal;
  page_without_mmu.replace(page_without_mmu.find("\"Type\":\"MicroBlaze 32bit\""), 25,
                           "\"Type\":\"MicroBlaze 32bit\",\"MMU Page Size\":\"4KB\"");
  EXPECT_FPGATEE_ERROR(parse_description(page_without_mmu), ErrorCode::kMalformedInput);

  std::string wraps = kMinimal;
  wraps.replace(wraps.find("0x10000000"), 10, "0xfff00000");
  wraps.replace(wraps.find("1MB"), 3, "2MB");
  EXPECT_FPGATEE_ERROR(parse_description(wraps), ErrorCode::kBadSize);

  std::string half_address = R"({"Enclaves":[{"Name":"E","Processor":{"Type":"x"},"Memory Size":"4KB",
    "Shared DRAM SEB":{"Base":"0x0","Size":"1MB"}}],
    "Peripherals":[{"Type":"BRAM","Base Address":"0x0","Access":["E"]}]})";
  EXPECT_FPGATEE_ERROR(parse_description(half_address), ErrorCode::kMalformedInput);
}

TEST(ParseDescriptionTest, StrictRejectsAndLenientKeepsUnknownKeys) {
  std::string text = kMinimal;
  text.replace(text.find("\"Memory Size\""), 13, "\"Colour\":\"blue\",\"Memory Size\"");
  EXPECT_FPGATEE_ERROR(parse_description(text), ErrorCode::kUnknownField);
  HardwareDescription d = parse_description(text, ParseMode::kLenient);
  EXPECT_EQ(d.enclaves[0].unknown.at("Colour"), "\"blue\"");
  EXPECT_EQ(parse_description(serialize_description(d), ParseMode::kLenient), d);
  EXPECT_NE(serialize_description(d).find("Colour"), std::string::npos);
}

TEST(ParseDescriptionTest, SerializeParseFixpoint) {
  HardwareDescription d = parse_description(three_enclave_description());
  std::string once = serialize_description(d);
  HardwareDescription back = parse_description(once);
  EXPECT_EQ(back, d);
  EXPECT_EQ(serialize_description(back), once);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    HardwareDescription r = random_description(rng);
    ASSERT_EQ(parse_description(serialize_description(r)), r) << serialize_description(r);
  }
}

TEST(ValidateTest, ThreeEnclaveExampleExceeds64MiB) {
  PlatformLimits limits = PlatformLimits::desk();
  limits.bram_capacity = 64 * MiB;
  EXPECT_FPGATEE_ERROR(validate(parse_description(three_enclave_description()), limits),
                       ErrorCode::kCapacityExceeded);
}

TEST(ValidateTest, ThreeEnclaveSizesPackBackToBack) {
  // Without the fixed shared BRAM the enclaves pack into
  // [0, 512K), [512K, 32.5M), [32.5M, 96.5M).
  HardwareDescription d = three_enclaves_disjoint_sebs();
  d.peripherals.pop_back();
  PlatformLimits limits = PlatformLimits::desk();
  limits.bram_capacity = 96 * MiB + 512 * KiB;
  ValidatedPlan plan = validate(d, limits);
  ASSERT_EQ(plan.bram_map.size(), 3u);
  EXPECT_EQ(plan.bram_map[0], (BramRange{0, 512 * KiB}));
  EXPECT_EQ(plan.bram_map[1], (BramRange{512 * KiB, 32 * MiB}));
  EXPECT_EQ(plan.bram_map[2], (BramRange{32 * MiB + 512 * KiB, 64 * MiB}));
  limits.bram_capacity -= kBramGranularity;
  EXPECT_FPGATEE_ERROR(validate(d, limits), ErrorCode::kCapacityExceeded);
}

TEST(ValidateTest, FirstFitPlacesEnclavesAroundFixedSharedBram) {
  ValidatedPlan plan = validate(three_enclaves_disjoint_sebs(), PlatformLimits::desk());
  // Shared BRAM occupies [0x1f0000, 0x3f0000); Enclave-1 fits below it.
  EXPECT_EQ(plan.bram_map[0], (BramRange{0, 512 * KiB}));
  EXPECT_EQ(plan.bram_map[1], (BramRange{0x3f0000, 32 * MiB}));
  EXPECT_EQ(plan.bram_map[2], (BramRange{0x3f0000 + 32 * MiB, 64 * MiB}));
  ASSERT_EQ(plan.shared_bram.size(), 1u);
  EXPECT_EQ(plan.shared_bram[0].range, (BramRange{0x1f0000, 2 * MiB}));
}

TEST(ValidateTest, ThreeEnclaveExamplePlansButCannotBeConfigured) {
  // Enclave-1's SEB [0x20000000, 0x20200000) contains both other bases, and
  // Enclave-2's 128 MiB window contains Enclave-3's base.
  HardwareDescription d = parse_description(three_enclave_description());
  ValidatedPlan plan = validate(d, PlatformLimits::desk());
  EXPECT_EQ(plan.bram_map, validate(three_enclaves_disjoint_sebs(), PlatformLimits::desk()).bram_map);
  std::vector<std::string> clashes = seb_overlaps(d);
  ASSERT_EQ(clashes.size(), 3u);
  EXPECT_NE(clashes[0].find("Enclave-1 [0x20000000, 0x20200000)"), std::string::npos) << clashes[0];
  EXPECT_TRUE(seb_overlaps(three_enclaves_disjoint_sebs()).empty());

  sim::Platform p;
  EXPECT_FPGATEE_ERROR(p.configure(plan), ErrorCode::kOverlappingSeb);
  EXPECT_FALSE(p.configured());
}

TEST(ValidateTest, SmallEnclaveFitsZynq7000) {
  HardwareDescription d = parse_description(kMinimal);
  ValidatedPlan plan = validate(d, PlatformLimits::zynq7000());
  EXPECT_EQ(plan.bram_map[0], (BramRange{0, 4 * KiB}));
  EXPECT_EQ(PlatformLimits::zynq7000().bram_capacity, 225 * KiB);
}

TEST(ValidateTest, UnknownPrincipal) {
  HardwareDescription d = parse_description(kMinimal);
  PeripheralSpec p;
  p.ptype = "AXI Gpio";
  p.access = {"Enclave-9"};
  d.peripherals.push_back(p);
  EXPECT_FPGATEE_ERROR(validate(d, PlatformLimits::desk()), ErrorCode::kUnknownPrincipal);
}

TEST(ValidateTest, OverlappingFixedSharedRegions) {
  HardwareDescription d = parse_description(kMinimal);
  PeripheralSpec a;
  a.ptype = "BRAM";
  a.base_address = 0x10000;
  a.size = 8 * KiB;
  a.access = {"E"};
  PeripheralSpec b = a;
  b.base_address = 0x11000;
  d.peripherals = {a, b};
  EXPECT_FPGATEE_ERROR(validate(d, PlatformLimits::desk()), ErrorCode::kSharedRegionConflict);
}

TEST(ValidateTest, SebOutsideDramOrTooSmall) {
  HardwareDescription d = parse_description(kMinimal);
  d.enclaves[0].seb = {0x30000000, 1 * MiB};
  EXPECT_FPGATEE_ERROR(validate(d, PlatformLimits::zynq7000()), ErrorCode::kCapacityExceeded);
  d.enclaves[0].seb = {0x1000000, 4 * KiB};
  EXPECT_FPGATEE_ERROR(validate(d, PlatformLimits::desk()), ErrorCode::kCapacityExceeded);
}

TEST(ValidateTest, AccessMatrixForThreeEnclaves) {
  ValidatedPlan plan = validate(three_enclaves_disjoint_sebs(), PlatformLimits::desk());
  const std::string hc(kHardcoreSystem);
  const AccessMatrix& m = plan.access;
  EXPECT_EQ(m.principals_for({K::kPeripheral, 0}), (std::set<std::string>{hc, "Enclave-2"}));
  EXPECT_EQ(m.principals_for({K::kPeripheral, 1}), (std::set<std::string>{"Enclave-1"}));
  EXPECT_EQ(m.principals_for({K::kSharedBram, 2}), (std::set<std::string>{"Enclave-1", "Enclave-3"}));
  for (std::uint32_t i = 0; i < 3; ++i) {
    std::string name = plan.description.enclaves[i].name;
    EXPECT_EQ(m.principals_for({K::kEnclaveBram, i}), std::set<std::string>{name});
    EXPECT_EQ(m.lookup(name, {K::kEnclaveBram, i}), kPermRead | kPermWrite);
    EXPECT_EQ(m.principals_for({K::kSeb, i}), (std::set<std::string>{hc, name}));
    EXPECT_EQ(m.principals_for({K::kInterruptController, i}), std::set<std::string>{hc});
  }
}

// Exhaustive interval check and access-list containment over random plans.
TEST(ValidateTest, RandomPlansAreDisjointAndRespectAccessLists) {
  std::mt19937_64 rng(12);
  for (int iter = 0; iter < 300; ++iter) {
    HardwareDescription d = random_description(rng);
    ValidatedPlan plan = validate(d, random_limits());
    std::vector<BramRange> all = plan.bram_map;
    for (const auto& s : plan.shared_bram) all.push_back(s.range);
    for (std::size_t i = 0; i < all.size(); ++i) {
      EXPECT_EQ(all[i].end() <= plan.limits.bram_capacity, true);
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        bool disjoint = all[i].end() <= all[j].base || all[j].end() <= all[i].base;
        ASSERT_TRUE(disjoint) << serialize_plan(plan);
      }
    }
    for (const auto& r : plan.bram_map) EXPECT_EQ(r.base % kBramGranularity, 0u);
    for (const auto& [key, perms] : plan.access.entries()) {
      if (key.second.kind != K::kPeripheral && key.second.kind != K::kSharedBram) continue;
      const auto& acc = d.peripherals[key.second.index].access;
      EXPECT_NE(std::find(acc.begin(), acc.end(), key.first), acc.end());
    }
    EXPECT_EQ(serialize_plan(validate(d, random_limits())), serialize_plan(plan));
  }
}

TEST(SerializePlanTest, RoundTripsThroughParsePlan) {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 50; ++iter) {
    ValidatedPlan plan = validate(random_description(rng), random_limits());
    std::string text = serialize_plan(plan);
    EXPECT_EQ(parse_plan(text), plan);
  }
  ValidatedPlan plan = validate(three_enclaves_disjoint_sebs(), PlatformLimits::desk());
  std::string text = serialize_plan(plan);
  EXPECT_NE(text.find("\"base\": \"0x001f0000\""), std::string::npos);
  std::string tampered = text;
  tampered.replace(tampered.find("\"0x003f0000\""), 12, "\"0x00400000\"");
  EXPECT_FPGATEE_ERROR(parse_plan(tampered), ErrorCode::kMalformedInput);
}

}  // namespace
}  // namespace fpgatee::hw
