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

#include "fpgatee/hw/plan.hpp"

#include <algorithm>
#include <optional>

#include "fpgatee/error.hpp"
#include "json.hpp"

namespace fpgatee::hw {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::uint64_t align_up(std::uint64_t v, std::uint64_t a) { return (v + a - 1) / a * a; }

bool overlaps(std::uint64_t a_base, std::uint64_t a_end, std::uint64_t b_base, std::uint64_t b_end) {
  return a_base < b_end && b_base < a_end;
}

// Lowest aligned base >= 0 where [base, base+size) avoids every taken range
// and ends within capacity.
std::optional<std::uint64_t> first_fit(const std::vector<BramRange>& taken, std::uint64_t size,
                                       std::uint64_t capacity) {
  std::vector<BramRange> sorted = taken;
  std::sort(sorted.begin(), sorted.end(),
            [](const BramRange& a, const BramRange& b) { return a.base < b.base; });
  std::uint64_t cursor = 0;
  for (const auto& r : sorted) {
    if (cursor + size <= r.base) break;
    cursor = std::max(cursor, align_up(r.end(), kBramGranularity));
  }
  if (cursor + size > capacity) return std::nullopt;
  return cursor;
}

std::uint64_t total_span(const std::vector<BramRange>& taken, std::uint64_t size) {
  std::uint64_t end = size;
  for (const auto& r : taken) end = std::max(end, r.end() + size);
  return end;
}

const char* kind_name(ResourceId::Kind k) {
  switch (k) {
    case ResourceId::Kind::kEnclaveBram: return "bram";
    case ResourceId::Kind::kSharedBram: return "shared";
    case ResourceId::Kind::kSeb: return "seb";
    case ResourceId::Kind::kPeripheral: return "periph";
    case ResourceId::Kind::kInterruptController: return "intc";
  }
  return "?";
}

ordered_json range_json(std::uint64_t base, std::uint64_t size) {
  ordered_json j;
  j["base"] = format_address(base);
  j["size"] = size;
  return j;
}

}  // namespace

PlatformLimits PlatformLimits::zynq7000() {
  PlatformLimits l;
  l.bram_capacity = 225 * KiB;
  l.dram_base = 0;
  l.dram_size = 512 * MiB;
  return l;
}

PlatformLimits PlatformLimits::desk() {
  PlatformLimits l;
  l.bram_capacity = 128 * MiB;
  l.dram_base = 0;
  l.dram_size = std::uint64_t{1} << 32;
  return l;
}

std::string permission_string(PermissionSet perms) {
  std::string s = "---";
  if (perms & kPermRead) s[0] = 'r';
  if (perms & kPermWrite) s[1] = 'w';
  if (perms & kPermInterrupt) s[2] = 'i';
  return s;
}

std::string ResourceId::to_string() const {
  return std::string(kind_name(kind)) + ":" + std::to_string(index);
}

std::string peripheral_principal(std::size_t index) { return "peripheral:" + std::to_string(index); }

void AccessMatrix::grant(const std::string& principal, ResourceId resource, PermissionSet perms) {
  entries_[{principal, resource}] |= perms;
}

PermissionSet AccessMatrix::lookup(std::string_view principal, ResourceId resource) const {
  auto it = entries_.find({std::string(principal), resource});
  return it == entries_.end() ? PermissionSet{0} : it->second;
}

std::set<std::string> AccessMatrix::principals_for(ResourceId resource) const {
  std::set<std::string> out;
  for (const auto& [key, perms] : entries_) {
    if (key.second == resource && perms != 0) out.insert(key.first);
  }
  return out;
}

std::vector<std::string> ValidatedPlan::principals() const {
  std::vector<std::string> out{std::string(kHardcoreSystem)};
  for (const auto& e : description.enclaves) out.push_back(e.name);
  for (std::size_t i = 0; i < description.peripherals.size(); ++i) out.push_back(peripheral_principal(i));
  return out;
}

std::vector<ResourceId> ValidatedPlan::resources() const {
  using K = ResourceId::Kind;
  std::vector<ResourceId> out;
  for (std::uint32_t i = 0; i < description.enclaves.size(); ++i) {
    out.push_back({K::kEnclaveBram, i});
    out.push_back({K::kSeb, i});
    out.push_back({K::kInterruptController, i});
  }
  for (const auto& s : shared_bram) out.push_back({K::kSharedBram, static_cast<std::uint32_t>(s.peripheral)});
  for (const auto& m : mmio) out.push_back({K::kPeripheral, static_cast<std::uint32_t>(m.peripheral)});
  return out;
}

ValidatedPlan validate(const HardwareDescription& desc, const PlatformLimits& limits) {
  using K = ResourceId::Kind;
  if (desc.enclaves.empty()) throw Error(ErrorCode::kMalformedInput, "description has no enclaves");

  ValidatedPlan plan;
  plan.description = desc;
  plan.limits = limits;

  // Every principal named by a peripheral must exist.
  for (std::size_t i = 0; i < desc.peripherals.size(); ++i) {
    for (const auto& who : desc.peripherals[i].access) {
      if (who != kHardcoreSystem && !desc.find_enclave(who)) {
        throw Error(ErrorCode::kUnknownPrincipal,
                    "peripheral " + std::to_string(i) + " (" + desc.peripherals[i].ptype +
                        ") grants access to undefined principal \"" + who + "\"");
      }
    }
  }

  // Shared BRAM with a fixed base is reserved before enclaves are placed.
  std::vector<BramRange> taken;
  for (std::size_t i = 0; i < desc.peripherals.size(); ++i) {
    const auto& p = desc.peripherals[i];
    if (!p.is_shared_bram() || !p.base_address) continue;
    BramRange r{*p.base_address, *p.size};
    if (r.size == 0 || r.end() > limits.bram_capacity) {
      throw Error(ErrorCode::kCapacityExceeded, "shared BRAM " + std::to_string(i) + " exceeds platform BRAM");
    }
    for (const auto& s : plan.shared_bram) {
      if (overlaps(r.base, r.end(), s.range.base, s.range.end())) {
        throw Error(ErrorCode::kSharedRegionConflict, "shared BRAM regions " + std::to_string(s.peripheral) +
                                                          " and " + std::to_string(i) + " overlap");
      }
    }
    plan.shared_bram.push_back({i, r, p.access});
    taken.push_back(r);
  }

  for (const auto& e : desc.enclaves) {
    if (e.memory_size > limits.bram_capacity) {
      throw Error(ErrorCode::kCapacityExceeded, e.name + " needs more BRAM than the platform has");
    }
    auto base = first_fit(taken, e.memory_size, limits.bram_capacity);
    if (!base) {
      throw Error(ErrorCode::kCapacityExceeded,
                  "no room for " + e.name + " (" + format_size(e.memory_size) + "); plan needs at least " +
                      std::to_string(total_span(taken, e.memory_size)) + " bytes of BRAM, platform has " +
                      std::to_string(limits.bram_capacity));
    }
    BramRange r{*base, e.memory_size};
    plan.bram_map.push_back(r);
    taken.push_back(r);
  }

  // Shared BRAM without a base goes after the enclaves.
  for (std::size_t i = 0; i < desc.peripherals.size(); ++i) {
    const auto& p = desc.peripherals[i];
    if (!p.is_shared_bram() || p.base_address) continue;
    auto base = first_fit(taken, align_up(*p.size, kBramGranularity), limits.bram_capacity);
    if (!base) throw Error(ErrorCode::kCapacityExceeded, "no room for shared BRAM " + std::to_string(i));
    BramRange r{*base, *p.size};
    plan.shared_bram.push_back({i, r, p.access});
    taken.push_back(r);
  }
  std::sort(plan.shared_bram.begin(), plan.shared_bram.end(),
            [](const SharedBram& a, const SharedBram& b) { return a.peripheral < b.peripheral; });

  // SEB windows: inside DRAM and large enough for the region table. Overlap
  // between windows is left to seb_overlaps.
  const SebLayout layout = SebLayout::compute(limits.seb_regions);
  for (const auto& e : desc.enclaves) {
    if (e.seb.base < limits.dram_base || e.seb.end() > limits.dram_base + limits.dram_size) {
      throw Error(ErrorCode::kCapacityExceeded, "SEB of " + e.name + " lies outside platform DRAM");
    }
    if (e.seb.size < layout.total) {
      throw Error(ErrorCode::kCapacityExceeded, "SEB of " + e.name + " is smaller than its region table (" +
                                                    std::to_string(layout.total) + " bytes)");
    }
  }
  // Register windows for everything else.
  std::uint64_t next_auto = kMmioAutoBase;
  for (std::size_t i = 0; i < desc.peripherals.size(); ++i) {
    const auto& p = desc.peripherals[i];
    if (p.is_shared_bram()) continue;
    MmioWindow w{i, 0, kMmioAutoStride};
    if (p.base_address) {
      w.base = *p.base_address;
      w.size = *p.size;
    } else {
      auto collides = [&](std::uint64_t b) {
        return std::any_of(desc.peripherals.begin(), desc.peripherals.end(), [&](const PeripheralSpec& q) {
          return !q.is_shared_bram() && q.base_address &&
                 overlaps(b, b + kMmioAutoStride, *q.base_address, *q.base_address + *q.size);
        });
      };
      while (collides(next_auto)) next_auto += kMmioAutoStride;
      w.base = next_auto;
      next_auto += kMmioAutoStride;
    }
    for (const auto& other : plan.mmio) {
      if (overlaps(w.base, w.base + w.size, other.base, other.base + other.size)) {
        throw Error(ErrorCode::kSharedRegionConflict, "peripheral windows " + std::to_string(other.peripheral) +
                                                          " and " + std::to_string(i) + " overlap");
      }
    }
    plan.mmio.push_back(w);
  }

  // Access matrix.
  const std::string hardcore(kHardcoreSystem);
  for (std::uint32_t i = 0; i < desc.enclaves.size(); ++i) {
    const auto& name = desc.enclaves[i].name;
    plan.access.grant(name, {K::kEnclaveBram, i}, kPermRead | kPermWrite);
    plan.access.grant(name, {K::kSeb, i}, kPermRead | kPermWrite);
    plan.access.grant(hardcore, {K::kSeb, i}, kPermRead | kPermWrite);
    plan.access.grant(hardcore, {K::kInterruptController, i}, kPermInterrupt);
  }
  for (const auto& s : plan.shared_bram) {
    for (const auto& who : s.principals) {
      plan.access.grant(who, {K::kSharedBram, static_cast<std::uint32_t>(s.peripheral)}, kPermRead | kPermWrite);
    }
  }
  for (const auto& m : plan.mmio) {
    for (const auto& who : desc.peripherals[m.peripheral].access) {
      plan.access.grant(who, {K::kPeripheral, static_cast<std::uint32_t>(m.peripheral)}, kPermRead | kPermWrite);
    }
  }
  return plan;
}

std::string serialize_plan(const ValidatedPlan& plan) {
  ordered_json root;
  root["format"] = "fpgatee-plan/1";
  ordered_json limits;
  limits["bram_capacity"] = plan.limits.bram_capacity;
  limits["dram_base"] = format_address(plan.limits.dram_base);
  limits["dram_size"] = plan.limits.dram_size;
  limits["seb_regions"] = {{"ssa_star", plan.limits.seb_regions.ssa_star},
                           {"input", plan.limits.seb_regions.input},
                           {"output", plan.limits.seb_regions.output}};
  root["limits"] = std::move(limits);
  root["description"] = ordered_json::parse(serialize_description(plan.description));

  ordered_json enclaves = ordered_json::array();
  for (std::size_t i = 0; i < plan.description.enclaves.size(); ++i) {
    const auto& e = plan.description.enclaves[i];
    ordered_json j;
    j["name"] = e.name;
    j["bram"] = range_json(plan.bram_map[i].base, plan.bram_map[i].size);
    j["seb"] = range_json(e.seb.base, e.seb.size);
    enclaves.push_back(std::move(j));
  }
  root["enclaves"] = std::move(enclaves);

  ordered_json shared = ordered_json::array();
  for (const auto& s : plan.shared_bram) {
    ordered_json j;
    j["peripheral"] = s.peripheral;
    j["range"] = range_json(s.range.base, s.range.size);
    j["principals"] = s.principals;
    shared.push_back(std::move(j));
  }
  root["shared_bram"] = std::move(shared);

  ordered_json mmio = ordered_json::array();
  for (const auto& m : plan.mmio) {
    ordered_json j;
    j["peripheral"] = m.peripheral;
    j["range"] = range_json(m.base, m.size);
    mmio.push_back(std::move(j));
  }
  root["mmio"] = std::move(mmio);

  ordered_json access = ordered_json::array();
  for (const auto& [key, perms] : plan.access.entries()) {
    ordered_json j;
    j["principal"] = key.first;
    j["resource"] = key.second.to_string();
    j["perms"] = permission_string(perms);
    access.push_back(std::move(j));
  }
  root["access"] = std::move(access);
  return root.dump(2) + "\n";
}

ValidatedPlan parse_plan(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedInput, e.what());
  }
  try {
    if (root.at("format") != "fpgatee-plan/1") throw Error(ErrorCode::kMalformedInput, "unknown plan format");
    const json& l = root.at("limits");
    PlatformLimits limits;
    limits.bram_capacity = l.at("bram_capacity").get<std::uint64_t>();
    limits.dram_base = parse_address(l.at("dram_base").get<std::string>());
    limits.dram_size = l.at("dram_size").get<std::uint64_t>();
    limits.seb_regions.ssa_star = l.at("seb_regions").at("ssa_star").get<std::uint32_t>();
    limits.seb_regions.input = l.at("seb_regions").at("input").get<std::uint32_t>();
    limits.seb_regions.output = l.at("seb_regions").at("output").get<std::uint32_t>();
    HardwareDescription desc = parse_description(root.at("description").dump(), ParseMode::kLenient);
    ValidatedPlan plan = validate(desc, limits);
    if (json::parse(serialize_plan(plan)) != root) {
      throw Error(ErrorCode::kMalformedInput, "plan allocation does not match its description");
    }
    return plan;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("plan: ") + e.what());
  }
}

std::vector<std::string> seb_overlaps(const HardwareDescription& desc) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < desc.enclaves.size(); ++i) {
    for (std::size_t j = i + 1; j < desc.enclaves.size(); ++j) {
      const auto& a = desc.enclaves[i].seb;
      const auto& b = desc.enclaves[j].seb;
      if (!overlaps(a.base, a.end(), b.base, b.end())) continue;
      out.push_back("SEB windows of " + desc.enclaves[i].name + " [" + format_address(a.base) + ", " +
                    format_address(a.end()) + ") and " + desc.enclaves[j].name + " [" + format_address(b.base) +
                    ", " + format_address(b.end()) + ") overlap");
    }
  }
  return out;
}

}  // namespace fpgatee::hw
