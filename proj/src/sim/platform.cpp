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

#include "fpgatee/sim/platform.hpp"

#include <algorithm>
#include <sstream>

#include "fpgatee/hw/description.hpp"

namespace fpgatee::sim {

using hw::ResourceId;
using K = ResourceId::Kind;

std::string_view line_name(Line line) {
  switch (line) {
    case Line::kLdExec: return "LdExec";
    case Line::kLdExecPreAtt: return "LdExecPreAtt";
    case Line::kLdExecPostAtt: return "LdExecPostAtt";
    case Line::kNewData: return "NewData";
    case Line::kSusExp: return "SusExp";
    case Line::kReExec: return "ReExec";
  }
  return "?";
}

std::string Event::to_string() const {
  std::ostringstream ss;
  ss << seq << ' ' << principal << ' ' << op << " 0x" << std::hex << addr << std::dec << ' ' << len << ' '
     << outcome;
  return ss.str();
}

void Platform::configure(const hw::ValidatedPlan& plan) {
  // Overlapping SEBs would let one enclave's firmware reach another's block.
  if (auto clash = hw::seb_overlaps(plan.description); !clash.empty()) {
    throw Error(ErrorCode::kOverlappingSeb, clash.front());
  }
  std::lock_guard lock(mu_);
  plan_ = plan;
  pages_.clear();
  regions_.clear();
  for (std::uint32_t i = 0; i < plan.description.enclaves.size(); ++i) {
    const auto& e = plan.description.enclaves[i];
    regions_.push_back({{K::kEnclaveBram, i}, kBramBus + plan.bram_map[i].base, plan.bram_map[i].size});
    regions_.push_back({{K::kSeb, i}, kDramBus + e.seb.base, e.seb.size});
    regions_.push_back({{K::kInterruptController, i}, kIntcBus + i * kIntcWindow, kIntcWindow});
  }
  for (const auto& s : plan.shared_bram) {
    regions_.push_back({{K::kSharedBram, static_cast<std::uint32_t>(s.peripheral)}, kBramBus + s.range.base,
                        s.range.size});
  }
  for (const auto& m : plan.mmio) {
    regions_.push_back({{K::kPeripheral, static_cast<std::uint32_t>(m.peripheral)}, kMmioBus + m.base, m.size});
  }
  std::sort(regions_.begin(), regions_.end(), [](const Region& a, const Region& b) { return a.base < b.base; });
  controllers_.assign(plan.description.enclaves.size(), Controller{});
  for (auto& c : controllers_) c.enabled.fill(true);
  log("configure", "configure", 0, 0, "ok");
}

void Platform::reset() {
  std::lock_guard lock(mu_);
  plan_.reset();
  pages_.clear();
  regions_.clear();
  controllers_.clear();
  log("configure", "reset", 0, 0, "ok");
}

bool Platform::configured() const {
  std::lock_guard lock(mu_);
  return plan_.has_value();
}

void Platform::require_configured() const {
  if (!plan_) throw Error(ErrorCode::kInvalidState, "platform is not configured");
}

hw::ValidatedPlan Platform::plan() const {
  std::lock_guard lock(mu_);
  require_configured();
  return *plan_;
}

std::vector<Region> Platform::regions() const {
  std::lock_guard lock(mu_);
  return regions_;
}

Region Platform::region(ResourceId resource) const {
  std::lock_guard lock(mu_);
  for (const auto& r : regions_) {
    if (r.resource == resource) return r;
  }
  throw Error(ErrorCode::kInvalidState, "no such resource " + resource.to_string());
}

std::size_t Platform::enclave_count() const {
  std::lock_guard lock(mu_);
  return plan_ ? plan_->description.enclaves.size() : 0;
}

std::uint64_t Platform::bram_base(std::size_t enclave) const { return region({K::kEnclaveBram, static_cast<std::uint32_t>(enclave)}).base; }
std::uint64_t Platform::bram_size(std::size_t enclave) const { return region({K::kEnclaveBram, static_cast<std::uint32_t>(enclave)}).size; }
std::uint64_t Platform::seb_base(std::size_t enclave) const { return region({K::kSeb, static_cast<std::uint32_t>(enclave)}).base; }

const Region* Platform::find_region(std::uint64_t addr, std::uint64_t len) const {
  auto it = std::upper_bound(regions_.begin(), regions_.end(), addr,
                             [](std::uint64_t a, const Region& r) { return a < r.base; });
  if (it == regions_.begin()) return nullptr;
  const Region& r = *std::prev(it);
  if (addr - r.base + len > r.size || (len == 0 && addr >= r.base + r.size)) return nullptr;
  return &r;
}

std::optional<ResourceId> Platform::resource_at(std::uint64_t addr, std::uint64_t len) const {
  std::lock_guard lock(mu_);
  const Region* r = find_region(addr, len);
  if (!r) return std::nullopt;
  return r->resource;
}

bool Platform::is_enclave(std::string_view principal) const {
  return plan_ && plan_->description.find_enclave(principal).has_value();
}

void Platform::log(std::string_view principal, std::string op, std::uint64_t addr, std::uint64_t len,
                   std::string outcome) {
  ++seq_;
  bool fault = outcome == "denied";
  bool access = op == "read" || op == "write";
  if (!fault && access && policy_ == LogPolicy::kFaultsOnly) return;
  if (!fault && access && policy_ == LogPolicy::kSkipGrantedEnclaveAccess && is_enclave(principal)) return;
  if (fault) fault_index_.push_back(events_.size());
  events_.push_back({seq_, std::string(principal), std::move(op), addr, len, std::move(outcome)});
}

void Platform::check_access(std::string_view principal, std::uint64_t addr, std::uint64_t len,
                            hw::PermissionSet needed, const char* op) {
  require_configured();
  const Region* r = find_region(addr, len);
  if (!r || !plan_->access.allows(principal, r->resource, needed)) {
    log(principal, op, addr, len, "denied");
    std::ostringstream ss;
    ss << principal << " may not " << op << ' ' << len << " bytes at 0x" << std::hex << addr;
    if (r) ss << " (" << r->resource.to_string() << ')';
    throw Error(ErrorCode::kAccessDenied, ss.str());
  }
  log(principal, op, addr, len, "ok");
}

void Platform::copy_out(std::uint64_t addr, std::span<std::uint8_t> out) const {
  std::size_t done = 0;
  while (done < out.size()) {
    std::uint64_t a = addr + done;
    std::uint64_t page = a / kPageSize, off = a % kPageSize;
    std::size_t n = std::min<std::size_t>(out.size() - done, kPageSize - off);
    auto it = pages_.find(page);
    if (it == pages_.end()) {
      std::fill_n(out.begin() + done, n, 0);
    } else {
      std::copy_n(it->second.begin() + off, n, out.begin() + done);
    }
    done += n;
  }
}

void Platform::copy_in(std::uint64_t addr, ByteView data) {
  std::size_t done = 0;
  while (done < data.size()) {
    std::uint64_t a = addr + done;
    std::uint64_t page = a / kPageSize, off = a % kPageSize;
    std::size_t n = std::min<std::size_t>(data.size() - done, kPageSize - off);
    auto it = pages_.find(page);
    bool all_zero = std::all_of(data.begin() + done, data.begin() + done + n, [](std::uint8_t b) { return b == 0; });
    if (it == pages_.end()) {
      if (all_zero) {
        done += n;
        continue;
      }
      it = pages_.emplace(page, Page{}).first;
    }
    std::copy_n(data.begin() + done, n, it->second.begin() + off);
    done += n;
  }
}

Bytes Platform::mem_read(std::string_view principal, std::uint64_t addr, std::uint64_t len) {
  std::lock_guard lock(mu_);
  check_access(principal, addr, len, hw::kPermRead, "read");
  Bytes out(len);
  copy_out(addr, out);
  return out;
}

void Platform::mem_write(std::string_view principal, std::uint64_t addr, ByteView data) {
  std::lock_guard lock(mu_);
  check_access(principal, addr, data.size(), hw::kPermWrite, "write");
  copy_in(addr, data);
}

std::uint32_t Platform::read_u32(std::string_view principal, std::uint64_t addr) {
  Bytes b = mem_read(principal, addr, 4);
  return b[0] | b[1] << 8 | b[2] << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

void Platform::write_u32(std::string_view principal, std::uint64_t addr, std::uint32_t value) {
  ByteWriter w;
  w.u32(value);
  mem_write(principal, addr, w.bytes());
}

void Platform::provision(std::uint64_t addr, ByteView data) {
  std::lock_guard lock(mu_);
  require_configured();
  if (!find_region(addr, data.size())) throw Error(ErrorCode::kInvalidState, "provisioning outside any resource");
  copy_in(addr, data);
  log("configure", "provision", addr, data.size(), "ok");
}

void Platform::raise_interrupt(std::string_view principal, std::size_t enclave, Line line) {
  std::string op = "raise:" + std::string(line_name(line));
  {
    std::lock_guard lock(mu_);
    require_configured();
    if (enclave >= controllers_.size()) throw Error(ErrorCode::kInvalidState, "no such enclave");
    ResourceId intc{K::kInterruptController, static_cast<std::uint32_t>(enclave)};
    if (!plan_->access.allows(principal, intc, hw::kPermInterrupt)) {
      log(principal, op, kIntcBus + enclave * kIntcWindow, 0, "denied");
      throw Error(ErrorCode::kAccessDenied, std::string(principal) + " may not raise interrupts on enclave " +
                                                std::to_string(enclave));
    }
    Controller& c = controllers_[enclave];
    auto i = static_cast<std::size_t>(line);
    const char* outcome = !c.enabled[i] ? "masked" : c.pending[i] ? "coalesced" : "pending";
    if (c.enabled[i]) c.pending[i] = true;
    log(principal, op, kIntcBus + enclave * kIntcWindow, 0, outcome);
  }
  irq_cv_.notify_all();
}

void Platform::set_line_enabled(std::size_t enclave, Line line, bool enabled) {
  std::lock_guard lock(mu_);
  require_configured();
  Controller& c = controllers_.at(enclave);
  c.enabled[static_cast<std::size_t>(line)] = enabled;
  if (!enabled) c.pending[static_cast<std::size_t>(line)] = false;
}

bool Platform::line_enabled(std::size_t enclave, Line line) const {
  std::lock_guard lock(mu_);
  require_configured();
  return controllers_.at(enclave).enabled[static_cast<std::size_t>(line)];
}

bool Platform::pending(std::size_t enclave, Line line) const {
  std::lock_guard lock(mu_);
  require_configured();
  return controllers_.at(enclave).pending[static_cast<std::size_t>(line)];
}

std::optional<Line> Platform::take_interrupt(std::size_t enclave, bool include_new_data) {
  static constexpr Line kPriority[] = {Line::kSusExp,        Line::kReExec, Line::kLdExecPostAtt,
                                       Line::kLdExecPreAtt,  Line::kLdExec, Line::kNewData};
  std::lock_guard lock(mu_);
  require_configured();
  Controller& c = controllers_.at(enclave);
  for (Line line : kPriority) {
    if (line == Line::kNewData && !include_new_data) break;
    auto i = static_cast<std::size_t>(line);
    if (c.pending[i]) {
      c.pending[i] = false;
      return line;
    }
  }
  return std::nullopt;
}

bool Platform::take_line(std::size_t enclave, Line line) {
  std::lock_guard lock(mu_);
  require_configured();
  bool& p = controllers_.at(enclave).pending[static_cast<std::size_t>(line)];
  bool was = p;
  p = false;
  return was;
}

bool Platform::wait_interrupt(std::size_t enclave, std::chrono::milliseconds timeout) {
  std::unique_lock lock(mu_);
  return irq_cv_.wait_for(lock, timeout, [&] {
    if (!plan_ || enclave >= controllers_.size()) return false;
    const auto& p = controllers_[enclave].pending;
    return std::any_of(p.begin(), p.end(), [](bool b) { return b; });
  });
}

void Platform::set_log_policy(LogPolicy policy) {
  std::lock_guard lock(mu_);
  policy_ = policy;
}

std::vector<Event> Platform::events() const {
  std::lock_guard lock(mu_);
  return events_;
}

std::vector<Event> Platform::faults() const {
  std::lock_guard lock(mu_);
  std::vector<Event> out;
  for (std::size_t i : fault_index_) out.push_back(events_[i]);
  return out;
}

std::string Platform::event_log() const {
  std::lock_guard lock(mu_);
  std::string out;
  for (const auto& e : events_) out += e.to_string() + "\n";
  return out;
}

}  // namespace fpgatee::sim
