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

#include "fpgatee/hw/synthesis.hpp"

#include <cctype>
#include <sstream>

#include "fpgatee/error.hpp"
#include "json.hpp"

namespace fpgatee::hw {
namespace {

std::string sanitize(std::string_view s) {
  std::string out;
  for (char c : s) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? static_cast<char>(std::tolower(c)) : '_');
  }
  return out;
}

std::string braced(std::string_view s) { return "{" + std::string(s) + "}"; }

class ScriptBuilder {
 public:
  void comment(std::string_view text) { lines_.push_back("# " + std::string(text)); }

  void cell(std::string_view kind, const std::string& name, const std::vector<std::string>& options = {}) {
    std::string line = "create_cell " + std::string(kind) + " " + name;
    for (const auto& o : options) line += " " + o;
    lines_.push_back(std::move(line));
  }

  void connect(const std::string& from, const std::string& to) {
    pending_edges_.push_back("connect " + from + " " + to);
  }

  void flush_edges() {
    lines_.insert(lines_.end(), pending_edges_.begin(), pending_edges_.end());
    pending_edges_.clear();
  }

  void raw(std::string line) { lines_.push_back(std::move(line)); }

  SynthesisScript finish() && {
    flush_edges();
    return SynthesisScript{std::move(lines_)};
  }

 private:
  std::vector<std::string> lines_;
  std::vector<std::string> pending_edges_;
};

std::string enclave_cell(std::size_t i, std::string_view part) {
  return "enclave" + std::to_string(i) + "_" + std::string(part);
}

std::string peripheral_cell(const ValidatedPlan& plan, std::size_t j) {
  return "periph" + std::to_string(j) + "_" + sanitize(plan.description.peripherals[j].ptype);
}

void emit_peripheral(ScriptBuilder& b, const ValidatedPlan& plan, std::size_t j) {
  const auto& p = plan.description.peripherals[j];
  std::vector<std::string> opts{"-type " + braced(p.ptype)};
  if (p.board_interface) opts.push_back("-board_interface " + braced(*p.board_interface));
  for (const auto& [k, v] : p.extra) opts.push_back("-" + sanitize(k) + " " + braced(v));
  if (p.is_shared_bram()) {
    for (const auto& s : plan.shared_bram) {
      if (s.peripheral == j) {
        opts.push_back("-base " + format_address(s.range.base));
        opts.push_back("-size " + std::to_string(s.range.size));
      }
    }
    b.cell("shared_bram", peripheral_cell(plan, j), opts);
  } else {
    for (const auto& m : plan.mmio) {
      if (m.peripheral == j) {
        opts.push_back("-base " + format_address(m.base));
        opts.push_back("-size " + std::to_string(m.size));
      }
    }
    b.cell("peripheral", peripheral_cell(plan, j), opts);
  }
}

void put_opt_size(ByteWriter& w, const std::optional<std::uint64_t>& v) {
  w.u8(v.has_value());
  if (v) w.u64(*v);
}

void put_opt_string(ByteWriter& w, const std::optional<std::string>& v) {
  w.u8(v.has_value());
  if (v) w.lp32(*v);
}

void put_map(ByteWriter& w, const std::map<std::string, std::string>& m) {
  w.u32(static_cast<std::uint32_t>(m.size()));
  for (const auto& [k, v] : m) w.lp32(k).lp32(v);
}

std::optional<std::uint64_t> get_opt_size(ByteReader& r) {
  if (r.u8() == 0) return std::nullopt;
  return r.u64();
}

std::optional<std::string> get_opt_string(ByteReader& r) {
  if (r.u8() == 0) return std::nullopt;
  return to_string(r.lp32());
}

std::map<std::string, std::string> get_map(ByteReader& r) {
  std::map<std::string, std::string> m;
  std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string k = to_string(r.lp32());
    m[k] = to_string(r.lp32());
  }
  return m;
}

}  // namespace

std::string SynthesisScript::text() const {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

SynthesisScript emit_script(const ValidatedPlan& plan) {
  const auto& desc = plan.description;
  ScriptBuilder b;
  b.comment("fpgatee synthesis script");
  b.raw("define_plan " + braced(nlohmann::json::parse(serialize_plan(plan)).dump()));

  b.cell("processing_system", "hardcore");
  b.cell("axi_interconnect", "hardcore_axi");
  b.connect("hardcore", "hardcore_axi");
  b.flush_edges();

  std::vector<bool> created(desc.peripherals.size(), false);
  std::string lines;
  for (const auto& name : kInterruptLineNames) lines += (lines.empty() ? "" : " ") + std::string(name);

  for (std::size_t i = 0; i < desc.enclaves.size(); ++i) {
    const auto& e = desc.enclaves[i];
    const auto& proc = e.processor;
    b.comment(e.name);

    std::vector<std::string> cpu{"-label " + braced(e.name), "-cpu_type " + braced(proc.cpu_type)};
    if (proc.dcache_size) cpu.push_back("-dcache " + std::to_string(*proc.dcache_size));
    if (proc.icache_size) cpu.push_back("-icache " + std::to_string(*proc.icache_size));
    if (proc.fpu) cpu.push_back("-fpu " + braced(*proc.fpu));
    if (proc.mmu_enabled) cpu.push_back("-mmu_page_size " + std::to_string(proc.mmu_page_size.value_or(0)));
    b.cell("softcore", enclave_cell(i, "cpu"), cpu);
    b.cell("bram", enclave_cell(i, "bram"),
           {"-base " + format_address(plan.bram_map[i].base), "-size " + std::to_string(plan.bram_map[i].size)});
    b.cell("axi_interconnect", enclave_cell(i, "axi"));
    b.cell("interrupt_controller", enclave_cell(i, "intc"));
    b.cell("gpio_irq", enclave_cell(i, "irq"),
           {"-width " + std::to_string(std::size(kInterruptLineNames)), "-lines " + braced(lines)});
    if (proc.debugging) b.cell("debug_module", enclave_cell(i, "mdm"));
    b.cell("seb_window", enclave_cell(i, "seb"),
           {"-base " + format_address(e.seb.base), "-size " + std::to_string(e.seb.size)});

    b.connect(enclave_cell(i, "cpu"), enclave_cell(i, "axi"));
    b.connect(enclave_cell(i, "bram"), enclave_cell(i, "axi"));
    b.connect(enclave_cell(i, "intc"), enclave_cell(i, "cpu"));
    b.connect(enclave_cell(i, "irq"), enclave_cell(i, "intc"));
    b.connect("hardcore_axi", enclave_cell(i, "irq"));
    if (proc.debugging) b.connect(enclave_cell(i, "mdm"), enclave_cell(i, "cpu"));
    b.connect(enclave_cell(i, "seb"), enclave_cell(i, "axi"));
    b.connect(enclave_cell(i, "seb"), "hardcore_axi");

    for (std::size_t j = 0; j < desc.peripherals.size(); ++j) {
      const auto& acc = desc.peripherals[j].access;
      if (std::find(acc.begin(), acc.end(), e.name) == acc.end()) continue;
      if (!created[j]) {
        emit_peripheral(b, plan, j);
        created[j] = true;
      }
      b.connect(peripheral_cell(plan, j), enclave_cell(i, "axi"));
    }
    b.flush_edges();
  }

  bool header = false;
  for (std::size_t j = 0; j < desc.peripherals.size(); ++j) {
    const auto& acc = desc.peripherals[j].access;
    bool hardcore = std::find(acc.begin(), acc.end(), kHardcoreSystem) != acc.end();
    if (created[j] && !hardcore) continue;
    if (!header) {
      b.comment(kHardcoreSystem);
      header = true;
    }
    if (!created[j]) {
      emit_peripheral(b, plan, j);
      created[j] = true;
    }
    if (hardcore) b.connect(peripheral_cell(plan, j), "hardcore_axi");
  }
  return std::move(b).finish();
}

std::vector<ScriptCell> script_cells(const SynthesisScript& script) {
  std::vector<ScriptCell> out;
  for (const auto& line : script.lines) {
    std::istringstream in(line);
    std::string cmd;
    ScriptCell c;
    if (in >> cmd && cmd == "create_cell" && in >> c.kind >> c.name) out.push_back(std::move(c));
  }
  return out;
}

std::vector<ScriptEdge> script_edges(const SynthesisScript& script) {
  std::vector<ScriptEdge> out;
  for (const auto& line : script.lines) {
    std::istringstream in(line);
    std::string cmd;
    ScriptEdge e;
    if (in >> cmd && cmd == "connect" && in >> e.from >> e.to) out.push_back(std::move(e));
  }
  return out;
}

ValidatedPlan plan_from_script(std::string_view script_text) {
  constexpr std::string_view kDirective = "define_plan {";
  std::size_t pos = 0;
  while (pos < script_text.size()) {
    std::size_t eol = script_text.find('\n', pos);
    if (eol == std::string_view::npos) eol = script_text.size();
    std::string_view line = script_text.substr(pos, eol - pos);
    if (line.starts_with(kDirective) && line.ends_with("}")) {
      return parse_plan(line.substr(kDirective.size(), line.size() - kDirective.size() - 1));
    }
    pos = eol + 1;
  }
  throw Error(ErrorCode::kMalformedInput, "script has no define_plan line");
}

Bytes build_manifest(const ValidatedPlan& plan) {
  const auto& desc = plan.description;
  ByteWriter w;
  w.raw(kManifestMagic).u32(kManifestVersion);
  w.u64(plan.limits.bram_capacity).u64(plan.limits.dram_base).u64(plan.limits.dram_size);
  w.u32(plan.limits.seb_regions.ssa_star).u32(plan.limits.seb_regions.input).u32(plan.limits.seb_regions.output);

  w.u32(static_cast<std::uint32_t>(desc.enclaves.size()));
  for (std::size_t i = 0; i < desc.enclaves.size(); ++i) {
    const auto& e = desc.enclaves[i];
    const auto& p = e.processor;
    w.lp32(e.name).lp32(p.cpu_type);
    put_opt_size(w, p.dcache_size);
    put_opt_size(w, p.icache_size);
    put_opt_string(w, p.fpu);
    w.u8(p.mmu_enabled);
    put_opt_size(w, p.mmu_page_size);
    w.u8(p.debugging);
    put_map(w, p.unknown);
    w.u64(e.memory_size).u32(e.seb.base).u64(e.seb.size);
    put_map(w, e.unknown);
    put_map(w, e.seb_unknown);
    w.u64(plan.bram_map[i].base).u64(plan.bram_map[i].size);
  }

  w.u32(static_cast<std::uint32_t>(desc.peripherals.size()));
  for (const auto& p : desc.peripherals) {
    w.lp32(p.ptype);
    put_opt_string(w, p.board_interface);
    w.u8(p.base_address.has_value());
    if (p.base_address) w.u32(*p.base_address);
    put_opt_size(w, p.size);
    w.u32(static_cast<std::uint32_t>(p.access.size()));
    for (const auto& a : p.access) w.lp32(a);
    put_map(w, p.extra);
    put_map(w, p.unknown);
  }
  put_map(w, desc.unknown);

  w.u32(static_cast<std::uint32_t>(plan.shared_bram.size()));
  for (const auto& s : plan.shared_bram) {
    w.u32(static_cast<std::uint32_t>(s.peripheral)).u64(s.range.base).u64(s.range.size);
  }
  w.u32(static_cast<std::uint32_t>(plan.mmio.size()));
  for (const auto& m : plan.mmio) w.u32(static_cast<std::uint32_t>(m.peripheral)).u64(m.base).u64(m.size);
  w.u32(static_cast<std::uint32_t>(plan.access.entries().size()));
  for (const auto& [key, perms] : plan.access.entries()) {
    w.lp32(key.first).u8(static_cast<std::uint8_t>(key.second.kind)).u32(key.second.index).u8(perms);
  }
  return std::move(w).take();
}

ValidatedPlan parse_manifest(ByteView manifest) {
  if (manifest.size() < kManifestMagic.size() ||
      to_string(manifest.first(kManifestMagic.size())) != kManifestMagic) {
    throw Error(ErrorCode::kBadMagic, "not a bitstream manifest");
  }
  ByteReader r(manifest.subspan(kManifestMagic.size()), ErrorCode::kMalformedInput);
  if (r.u32() != kManifestVersion) throw Error(ErrorCode::kMalformedInput, "unsupported manifest version");
  PlatformLimits limits;
  limits.bram_capacity = r.u64();
  limits.dram_base = r.u64();
  limits.dram_size = r.u64();
  limits.seb_regions.ssa_star = r.u32();
  limits.seb_regions.input = r.u32();
  limits.seb_regions.output = r.u32();

  HardwareDescription desc;
  std::uint32_t n_enclaves = r.u32();
  for (std::uint32_t i = 0; i < n_enclaves; ++i) {
    EnclaveSpec e;
    e.name = to_string(r.lp32());
    e.processor.cpu_type = to_string(r.lp32());
    e.processor.dcache_size = get_opt_size(r);
    e.processor.icache_size = get_opt_size(r);
    e.processor.fpu = get_opt_string(r);
    e.processor.mmu_enabled = r.u8() != 0;
    e.processor.mmu_page_size = get_opt_size(r);
    e.processor.debugging = r.u8() != 0;
    e.processor.unknown = get_map(r);
    e.memory_size = r.u64();
    e.seb.base = r.u32();
    e.seb.size = r.u64();
    e.unknown = get_map(r);
    e.seb_unknown = get_map(r);
    r.u64();  // allocation, re-derived below
    r.u64();
    desc.enclaves.push_back(std::move(e));
  }
  std::uint32_t n_periph = r.u32();
  for (std::uint32_t i = 0; i < n_periph; ++i) {
    PeripheralSpec p;
    p.ptype = to_string(r.lp32());
    p.board_interface = get_opt_string(r);
    if (r.u8() != 0) p.base_address = r.u32();
    p.size = get_opt_size(r);
    std::uint32_t n_access = r.u32();
    for (std::uint32_t k = 0; k < n_access; ++k) p.access.push_back(to_string(r.lp32()));
    p.extra = get_map(r);
    p.unknown = get_map(r);
    desc.peripherals.push_back(std::move(p));
  }
  desc.unknown = get_map(r);

  ValidatedPlan plan = validate(desc, limits);
  Bytes canonical = build_manifest(plan);
  if (canonical.size() != manifest.size() || !std::equal(canonical.begin(), canonical.end(), manifest.begin())) {
    throw Error(ErrorCode::kMalformedInput, "manifest is not the canonical encoding of its plan");
  }
  return plan;
}

}  // namespace fpgatee::hw
