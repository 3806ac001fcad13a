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

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "fpgatee/crypto/crypto.hpp"
#include "fpgatee/hw/synthesis.hpp"
#include "test_support.hpp"

namespace fpgatee::hw {
namespace {

using fpgatee::testing::random_description;
using fpgatee::testing::random_limits;
using fpgatee::testing::three_enclave_sim_description;

ValidatedPlan sim_plan() { return validate(three_enclave_sim_description(), PlatformLimits::desk()); }

std::size_t count_kind(const std::vector<ScriptCell>& cells, std::string_view kind) {
  return std::count_if(cells.begin(), cells.end(), [&](const ScriptCell& c) { return c.kind == kind; });
}

TEST(EmitScriptTest, OneDebugModulePerDebuggingEnclave) {
  std::mt19937_64 rng(21);
  for (int iter = 0; iter < 100; ++iter) {
    ValidatedPlan plan = validate(random_description(rng), random_limits());
    auto cells = script_cells(emit_script(plan));
    std::size_t debugging = 0;
    for (std::size_t i = 0; i < plan.description.enclaves.size(); ++i) {
      bool dbg = plan.description.enclaves[i].processor.debugging;
      debugging += dbg;
      std::string mdm = "enclave" + std::to_string(i) + "_mdm";
      EXPECT_EQ(std::count(cells.begin(), cells.end(), ScriptCell{"debug_module", mdm}), dbg ? 1 : 0);
    }
    EXPECT_EQ(count_kind(cells, "debug_module"), debugging);
    EXPECT_EQ(count_kind(cells, "softcore"), plan.description.enclaves.size());
    EXPECT_EQ(count_kind(cells, "seb_window"), plan.description.enclaves.size());
  }
}

TEST(EmitScriptTest, NoPeripheralsMeansNoPeripheralEdges) {
  HardwareDescription d = three_enclave_sim_description();
  d.peripherals.clear();
  SynthesisScript script = emit_script(validate(d, PlatformLimits::desk()));
  for (const auto& c : script_cells(script)) {
    EXPECT_NE(c.kind, "peripheral");
    EXPECT_NE(c.kind, "shared_bram");
  }
  for (const auto& e : script_edges(script)) EXPECT_FALSE(e.from.starts_with("periph")) << e.from;
}

TEST(EmitScriptTest, ThreeEnclaveScriptShape) {
  SynthesisScript script = emit_script(sim_plan());
  EXPECT_EQ(script.lines.front(), "# fpgatee synthesis script");
  auto cells = script_cells(script);
  EXPECT_EQ(count_kind(cells, "debug_module"), 1u);  // only Enclave-1 has debugging on
  EXPECT_EQ(count_kind(cells, "gpio_irq"), 3u);
  EXPECT_EQ(count_kind(cells, "shared_bram"), 1u);
  EXPECT_EQ(count_kind(cells, "peripheral"), 2u);
  std::string text = script.text();
  EXPECT_NE(text.find("-lines {LdExec LdExecPreAtt LdExecPostAtt NewData SusExp ReExec}"), std::string::npos);
}

// Every peripheral edge corresponds to a grant and vice versa.
TEST(EmitScriptTest, EdgesMatchAccessMatrix) {
  std::mt19937_64 rng(22);
  for (int iter = 0; iter < 100; ++iter) {
    ValidatedPlan plan = validate(random_description(rng), random_limits());
    SynthesisScript script = emit_script(plan);
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& e : script_edges(script)) edges.insert({e.from, e.to});
    std::set<std::string> periph_cells;
    for (const auto& c : script_cells(script)) {
      if (c.kind == "peripheral" || c.kind == "shared_bram") periph_cells.insert(c.name);
    }
    EXPECT_EQ(periph_cells.size(), plan.description.peripherals.size());
    for (std::size_t j = 0; j < plan.description.peripherals.size(); ++j) {
      const auto& p = plan.description.peripherals[j];
      auto it = std::find_if(periph_cells.begin(), periph_cells.end(), [&](const std::string& n) {
        return n.starts_with("periph" + std::to_string(j) + "_");
      });
      ASSERT_NE(it, periph_cells.end());
      std::set<std::string> expected_targets;
      for (const auto& who : p.access) {
        if (who == kHardcoreSystem) {
          expected_targets.insert("hardcore_axi");
          continue;
        }
        auto e = plan.description.find_enclave(who);
        ASSERT_TRUE(e.has_value());
        expected_targets.insert("enclave" + std::to_string(*e) + "_axi");
      }
      std::set<std::string> targets;
      for (const auto& [from, to] : edges) {
        if (from == *it) targets.insert(to);
      }
      EXPECT_EQ(targets, expected_targets) << *it;
    }
    EXPECT_EQ(plan_from_script(script.text()), plan);
  }
}

TEST(EmitScriptTest, Deterministic) {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 50; ++iter) {
    HardwareDescription d = random_description(rng);
    EXPECT_EQ(emit_script(validate(d, random_limits())).text(), emit_script(validate(d, random_limits())).text());
  }
}

TEST(EmitScriptTest, PlanFromScriptRejectsMissingDirective) {
  EXPECT_FPGATEE_ERROR(plan_from_script("# nothing here\ncreate_cell softcore x\n"), ErrorCode::kMalformedInput);
}

TEST(ManifestTest, RoundTripAndDeterminism) {
  ValidatedPlan plan = sim_plan();
  Bytes m = build_manifest(plan);
  EXPECT_EQ(build_manifest(sim_plan()), m);
  EXPECT_EQ(parse_manifest(m), plan);
  EXPECT_EQ(to_string(ByteView(m).first(8)), kManifestMagic);
}

TEST(ManifestTest, GoldenThreeEnclaveHash) {
  Bytes m = build_manifest(sim_plan());
  EXPECT_EQ(crypto::hash(m).hex(), "1f2100957a8e6ad2bedd96a56d916ab2a60cad3ea3f28dc433072f4a3e087c81"
            "0afb3b08f409fc576f936544e5d694992ead192ea1ca821297d41d834e48e414");
}

TEST(ManifestTest, RejectsCorruption) {
  Bytes m = build_manifest(sim_plan());
  Bytes bad_magic = m;
  bad_magic[0] ^= 1;
  EXPECT_FPGATEE_ERROR(parse_manifest(bad_magic), ErrorCode::kBadMagic);
  Bytes truncated(m.begin(), m.end() - 1);
  EXPECT_FPGATEE_ERROR(parse_manifest(truncated), ErrorCode::kMalformedInput);
  Bytes trailing = m;
  trailing.push_back(0);
  EXPECT_FPGATEE_ERROR(parse_manifest(trailing), ErrorCode::kMalformedInput);
}

// Any single-field change to a valid description changes the manifest.
TEST(ManifestTest, SingleFieldMutationsChangeManifest) {
  using Mutation = std::function<void(HardwareDescription&, PlatformLimits&, std::mt19937_64&)>;
  auto pick = [](std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  std::vector<Mutation> mutations = {
      [&](auto& d, auto&, auto& rng) {
        auto& p = d.enclaves[pick(rng, d.enclaves.size())].processor;
        p.debugging = !p.debugging;
      },
      [&](auto& d, auto&, auto& rng) { d.enclaves[pick(rng, d.enclaves.size())].processor.cpu_type += "x"; },
      [&](auto& d, auto&, auto& rng) { d.enclaves[pick(rng, d.enclaves.size())].memory_size *= 2; },
      [&](auto& d, auto&, auto& rng) { d.enclaves[pick(rng, d.enclaves.size())].seb.size += 4096; },
      [&](auto& d, auto&, auto& rng) {
        auto& p = d.enclaves[pick(rng, d.enclaves.size())].processor;
        p.dcache_size = p.dcache_size.value_or(0) + 1024;
      },
      [&](auto& d, auto&, auto& rng) {
        auto& p = d.enclaves[pick(rng, d.enclaves.size())].processor;
        p.fpu = p.fpu ? std::optional<std::string>() : std::optional<std::string>("F32");
      },
      [&](auto&, auto& l, auto&) { l.bram_capacity += 4096; },
      [&](auto&, auto& l, auto&) { l.seb_regions.input += 8; },
      [&](auto& d, auto&, auto& rng) {
        if (d.peripherals.empty()) return;
        d.peripherals[pick(rng, d.peripherals.size())].ptype += "2";
      },
      [&](auto& d, auto&, auto& rng) {
        if (d.peripherals.empty()) return;
        d.peripherals[pick(rng, d.peripherals.size())].extra["Mode"] = "fast";
      },
      [&](auto& d, auto&, auto& rng) {
        if (d.peripherals.empty()) return;
        auto& acc = d.peripherals[pick(rng, d.peripherals.size())].access;
        if (acc.size() > 1) acc.pop_back();
      },
  };
  std::mt19937_64 rng(24);
  int checked = 0;
  for (int iter = 0; checked < 100 && iter < 1000; ++iter) {
    HardwareDescription d = random_description(rng);
    PlatformLimits limits = random_limits();
    Bytes before = build_manifest(validate(d, limits));
    HardwareDescription d2 = d;
    PlatformLimits limits2 = limits;
    mutations[pick(rng, mutations.size())](d2, limits2, rng);
    if (d2 == d && limits2 == limits) continue;
    Bytes after;
    try {
      after = build_manifest(validate(d2, limits2));
    } catch (const Error&) {
      continue;
    }
    EXPECT_NE(before, after);
    ++checked;
  }
  EXPECT_EQ(checked, 100);
}

}  // namespace
}  // namespace fpgatee::hw
