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

#include <string>
#include <string_view>
#include <vector>

#include "fpgatee/bytes.hpp"
#include "fpgatee/hw/plan.hpp"

namespace fpgatee::hw {

inline constexpr std::string_view kManifestMagic = "BYOTMAN1";
inline constexpr std::uint32_t kManifestVersion = 1;

// Names of the per-enclave interrupt lines wired through the GPIO block, in
// bit order.
inline constexpr std::string_view kInterruptLineNames[] = {
    "LdExec", "LdExecPreAtt", "LdExecPostAtt", "NewData", "SusExp", "ReExec",
};

// Tcl-like synthesis commands, one per line:
//
//   define_plan {<canonical plan JSON>}
//   create_cell <kind> <name> [-option value]...
//   connect <from> <to>
//
// Cell kinds: processing_system, axi_interconnect, softcore, bram,
// interrupt_controller, gpio_irq, debug_module, seb_window, peripheral,
// shared_bram.
struct SynthesisScript {
  std::vector<std::string> lines;

  std::string text() const;
};

struct ScriptCell {
  std::string kind;
  std::string name;

  friend bool operator==(const ScriptCell&, const ScriptCell&) = default;
};

struct ScriptEdge {
  std::string from;
  std::string to;

  friend bool operator==(const ScriptEdge&, const ScriptEdge&) = default;
};

SynthesisScript emit_script(const ValidatedPlan& plan);

std::vector<ScriptCell> script_cells(const SynthesisScript& script);
std::vector<ScriptEdge> script_edges(const SynthesisScript& script);

// Recovers the plan from the define_plan line of a script's text.
ValidatedPlan plan_from_script(std::string_view script_text);

// The bitstream stand-in measured at boot: magic, version, then every field
// of the plan length-prefixed in a fixed order.
Bytes build_manifest(const ValidatedPlan& plan);

// Throws BadMagic or MalformedInput.
ValidatedPlan parse_manifest(ByteView manifest);

}  // namespace fpgatee::hw
