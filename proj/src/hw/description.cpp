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

#include "fpgatee/hw/description.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "fpgatee/error.hpp"
#include "json.hpp"

namespace fpgatee::hw {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kEnabled = "Enabled";
constexpr std::string_view kDisabled = "Disabled";

[[noreturn]] void malformed(const std::string& context, const std::string& what) {
  throw Error(ErrorCode::kMalformedInput, context + ": " + what);
}

// Walks one JSON object, remembering which keys were consumed so leftovers
// can be rejected or preserved at the end.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string context) : obj_(obj), context_(std::move(context)) {
    if (!obj_.is_object()) malformed(context_, "expected a JSON object");
  }

  const json* find(std::string_view key) {
    auto it = obj_.find(std::string(key));
    if (it == obj_.end()) return nullptr;
    consumed_.insert(std::string(key));
    return &*it;
  }

  const json& require(std::string_view key) {
    const json* v = find(key);
    if (v == nullptr) malformed(context_, "missing \"" + std::string(key) + "\"");
    return *v;
  }

  std::string string_at(const json& v, std::string_view key) const {
    if (!v.is_string()) malformed(context_, "\"" + std::string(key) + "\" must be a string");
    return v.get<std::string>();
  }

  std::string require_string(std::string_view key) { return string_at(require(key), key); }

  std::optional<std::string> optional_string(std::string_view key) {
    const json* v = find(key);
    if (v == nullptr) return std::nullopt;
    return string_at(*v, key);
  }

  std::uint64_t size_at(const json& v, std::string_view key) const {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (!v.is_string()) {
      throw Error(ErrorCode::kBadSize, context_ + ": \"" + std::string(key) + "\" is not a size");
    }
    return parse_size(v.get<std::string>());
  }

  std::optional<std::uint64_t> optional_size(std::string_view key) {
    const json* v = find(key);
    if (v == nullptr) return std::nullopt;
    return size_at(*v, key);
  }

  std::uint64_t require_size(std::string_view key) { return size_at(require(key), key); }

  std::uint32_t require_address(std::string_view key) {
    const json& v = require(key);
    if (!v.is_string()) {
      throw Error(ErrorCode::kBadSize, context_ + ": \"" + std::string(key) + "\" is not an address");
    }
    return parse_address(v.get<std::string>());
  }

  bool flag(std::string_view key) {
    auto v = optional_string(key);
    if (!v) return false;
    if (*v == kEnabled) return true;
    if (*v == kDisabled) return false;
    malformed(context_, "\"" + std::string(key) + "\" must be Enabled or Disabled");
  }

  // Leftover keys: string values go to `extra` when given, others are
  // rejected (strict) or preserved (lenient).
  void finish(ParseMode mode, UnknownFields& unknown,
              std::map<std::string, std::string>* extra = nullptr) const {
    for (const auto& [key, value] : obj_.items()) {
      if (consumed_.contains(key)) continue;
      if (extra != nullptr && value.is_string()) {
        (*extra)[key] = value.get<std::string>();
      } else if (mode == ParseMode::kLenient) {
        unknown[key] = value.dump();
      } else {
        throw Error(ErrorCode::kUnknownField, context_ + ": unknown key \"" + key + "\"");
      }
    }
  }

  const std::string& context() const { return context_; }

 private:
  const json& obj_;
  std::string context_;
  std::set<std::string> consumed_;
};

ProcessorSpec parse_processor(const json& obj, const std::string& context, ParseMode mode) {
  ObjectReader r(obj, context);
  ProcessorSpec p;
  p.cpu_type = r.require_string("Type");
  p.dcache_size = r.optional_size("Data Cache");
  p.icache_size = r.optional_size("Instruction Cache");
  p.fpu = r.optional_string("FPU");
  p.mmu_enabled = r.flag("MMU");
  p.mmu_page_size = r.optional_size("MMU Page Size");
  p.debugging = r.flag("Debugging");
  r.finish(mode, p.unknown);
  if (p.mmu_page_size && !p.mmu_enabled) malformed(context, "\"MMU Page Size\" given without MMU");
  return p;
}

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

EnclaveSpec parse_enclave(const json& obj, std::size_t index, ParseMode mode) {
  ObjectReader r(obj, "Enclaves[" + std::to_string(index) + "]");
  EnclaveSpec e;
  e.name = r.require_string("Name");
  if (e.name.empty()) malformed(r.context(), "empty enclave name");
  std::string context = "enclave " + e.name;
  e.processor = parse_processor(r.require("Processor"), context + " Processor", mode);
  e.memory_size = r.require_size("Memory Size");
  if (e.memory_size < kBramGranularity || e.memory_size % KiB != 0 ||
      !is_power_of_two(e.memory_size / KiB)) {
    throw Error(ErrorCode::kBadSize, context + ": \"Memory Size\" must be a power-of-two multiple of 1KB and at least 4KB");
  }
  ObjectReader seb(r.require("Shared DRAM SEB"), context + " Shared DRAM SEB");
  e.seb.base = seb.require_address("Base");
  e.seb.size = seb.require_size("Size");
  seb.finish(mode, e.seb_unknown);
  if (e.seb.size == 0) throw Error(ErrorCode::kBadSize, context + ": empty SEB");
  if (e.seb.end() > (std::uint64_t{1} << 32)) {
    throw Error(ErrorCode::kBadSize, context + ": SEB wraps the 32-bit address space");
  }
  r.finish(mode, e.unknown);
  return e;
}

PeripheralSpec parse_peripheral(const json& obj, std::size_t index, ParseMode mode) {
  ObjectReader r(obj, "Peripherals[" + std::to_string(index) + "]");
  PeripheralSpec p;
  p.ptype = r.require_string("Type");
  p.board_interface = r.optional_string("Board Interface");
  if (r.find("Base Address") != nullptr) p.base_address = r.require_address("Base Address");
  p.size = r.optional_size("Size");
  if (p.base_address && !p.size) {
    malformed(r.context(), "\"Base Address\" needs a \"Size\"");
  }
  const json& access = r.require("Access");
  if (!access.is_array() || access.empty()) malformed(r.context(), "\"Access\" must be a non-empty list");
  for (const auto& a : access) {
    if (!a.is_string()) malformed(r.context(), "\"Access\" entries must be strings");
    p.access.push_back(a.get<std::string>());
  }
  r.finish(mode, p.unknown, &p.extra);
  return p;
}

ordered_json processor_json(const ProcessorSpec& p) {
  ordered_json j;
  j["Type"] = p.cpu_type;
  if (p.dcache_size) j["Data Cache"] = format_size(*p.dcache_size);
  if (p.icache_size) j["Instruction Cache"] = format_size(*p.icache_size);
  if (p.fpu) j["FPU"] = *p.fpu;
  if (p.mmu_enabled) j["MMU"] = kEnabled;
  if (p.mmu_page_size) j["MMU Page Size"] = format_size(*p.mmu_page_size);
  j["Debugging"] = p.debugging ? kEnabled : kDisabled;
  for (const auto& [k, v] : p.unknown) j[k] = ordered_json::parse(v);
  return j;
}

}  // namespace

bool PeripheralSpec::is_shared_bram() const {
  std::string upper = ptype;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return upper.find("BRAM") != std::string::npos && size.has_value();
}

std::optional<std::size_t> HardwareDescription::find_enclave(std::string_view name) const {
  for (std::size_t i = 0; i < enclaves.size(); ++i) {
    if (enclaves[i].name == name) return i;
  }
  return std::nullopt;
}

std::uint64_t parse_size(std::string_view text) {
  auto bad = [&]() -> Error { return Error(ErrorCode::kBadSize, "bad size \"" + std::string(text) + "\""); };
  std::size_t digits = 0;
  while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits]))) ++digits;
  if (digits == 0) throw bad();
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + digits, value);
  if (ec != std::errc() || ptr != text.data() + digits) throw bad();
  std::string_view suffix = text.substr(digits);
  std::uint64_t unit = 1;
  if (suffix == "KB") {
    unit = KiB;
  } else if (suffix == "MB") {
    unit = MiB;
  } else if (suffix == "GB") {
    unit = GiB;
  } else if (!suffix.empty()) {
    throw bad();
  }
  if (value > UINT64_MAX / unit) throw bad();
  return value * unit;
}

std::string format_size(std::uint64_t bytes) {
  if (bytes != 0 && bytes % GiB == 0) return std::to_string(bytes / GiB) + "GB";
  if (bytes != 0 && bytes % MiB == 0) return std::to_string(bytes / MiB) + "MB";
  if (bytes != 0 && bytes % KiB == 0) return std::to_string(bytes / KiB) + "KB";
  return std::to_string(bytes);
}

std::uint32_t parse_address(std::string_view text) {
  auto bad = [&]() -> Error { return Error(ErrorCode::kBadSize, "bad address \"" + std::string(text) + "\""); };
  if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) throw bad();
  std::string_view hex = text.substr(2);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), value, 16);
  if (ec != std::errc() || ptr != hex.data() + hex.size() || value > 0xffffffffULL) throw bad();
  return static_cast<std::uint32_t>(value);
}

std::string format_address(std::uint64_t addr) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%08llx", static_cast<unsigned long long>(addr));
  return buf;
}

HardwareDescription parse_description(std::string_view json_text, ParseMode mode) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedInput, e.what());
  }
  ObjectReader r(root, "description");
  HardwareDescription desc;
  const json& enclaves = r.require("Enclaves");
  if (!enclaves.is_array() || enclaves.empty()) malformed("description", "\"Enclaves\" must be a non-empty list");
  for (std::size_t i = 0; i < enclaves.size(); ++i) {
    desc.enclaves.push_back(parse_enclave(enclaves[i], i, mode));
  }
  if (const json* periph = r.find("Peripherals")) {
    if (!periph->is_array()) malformed("description", "\"Peripherals\" must be a list");
    for (std::size_t i = 0; i < periph->size(); ++i) {
      desc.peripherals.push_back(parse_peripheral((*periph)[i], i, mode));
    }
  }
  r.finish(mode, desc.unknown);

  std::set<std::string> names;
  for (const auto& e : desc.enclaves) {
    if (e.name == kHardcoreSystem) {
      throw Error(ErrorCode::kDuplicateName, "enclave name \"" + e.name + "\" is reserved");
    }
    if (!names.insert(e.name).second) {
      throw Error(ErrorCode::kDuplicateName, "duplicate enclave name \"" + e.name + "\"");
    }
  }
  return desc;
}

std::string serialize_description(const HardwareDescription& desc) {
  ordered_json root;
  ordered_json enclaves = ordered_json::array();
  for (const auto& e : desc.enclaves) {
    ordered_json j;
    j["Name"] = e.name;
    j["Processor"] = processor_json(e.processor);
    j["Memory Size"] = format_size(e.memory_size);
    ordered_json seb;
    seb["Base"] = format_address(e.seb.base);
    seb["Size"] = format_size(e.seb.size);
    for (const auto& [k, v] : e.seb_unknown) seb[k] = ordered_json::parse(v);
    j["Shared DRAM SEB"] = std::move(seb);
    for (const auto& [k, v] : e.unknown) j[k] = ordered_json::parse(v);
    enclaves.push_back(std::move(j));
  }
  root["Enclaves"] = std::move(enclaves);
  ordered_json periphs = ordered_json::array();
  for (const auto& p : desc.peripherals) {
    ordered_json j;
    j["Type"] = p.ptype;
    if (p.board_interface) j["Board Interface"] = *p.board_interface;
    if (p.base_address) j["Base Address"] = format_address(*p.base_address);
    if (p.size) j["Size"] = format_size(*p.size);
    for (const auto& [k, v] : p.extra) j[k] = v;
    for (const auto& [k, v] : p.unknown) j[k] = ordered_json::parse(v);
    j["Access"] = p.access;
    periphs.push_back(std::move(j));
  }
  root["Peripherals"] = std::move(periphs);
  for (const auto& [k, v] : desc.unknown) root[k] = ordered_json::parse(v);
  return root.dump(2);
}

}  // namespace fpgatee::hw
