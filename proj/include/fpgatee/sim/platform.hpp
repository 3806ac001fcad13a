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
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fpgatee/bytes.hpp"
#include "fpgatee/hw/plan.hpp"

namespace fpgatee::sim {

// One flat 64-bit physical address space; each bus occupies its own 4 GiB.
inline constexpr std::uint64_t kDramBus = 0;
inline constexpr std::uint64_t kBramBus = 1ull << 32;
inline constexpr std::uint64_t kMmioBus = 2ull << 32;
inline constexpr std::uint64_t kIntcBus = 3ull << 32;
inline constexpr std::uint64_t kIntcWindow = 0x100;

inline std::uint64_t bram_address(std::uint64_t offset) { return kBramBus + offset; }

enum class Line : std::uint8_t { kLdExec, kLdExecPreAtt, kLdExecPostAtt, kNewData, kSusExp, kReExec };
inline constexpr std::size_t kLineCount = 6;
std::string_view line_name(Line line);

struct Event {
  std::uint64_t seq = 0;
  std::string principal;
  std::string op;  // "read", "write", "raise:<line>", "configure", ...
  std::uint64_t addr = 0;
  std::uint64_t len = 0;
  std::string outcome;  // "ok", "denied", "pending", "coalesced", "masked"

  std::string to_string() const;
};

enum class LogPolicy {
  kAll,
  kSkipGrantedEnclaveAccess,  // drops the firmware's own successful accesses
  kFaultsOnly,
};

struct Region {
  hw::ResourceId resource;
  std::uint64_t base = 0;  // physical
  std::uint64_t size = 0;
};

// The simulated SoC. Every memory access is checked against the plan's
// AccessMatrix; a denied access has no side effects and is recorded as a
// fault. All operations are individually atomic.
class Platform {
 public:
  Platform() = default;
  explicit Platform(const hw::ValidatedPlan& plan) { configure(plan); }
  Platform(const Platform&) = delete;
  Platform& operator=(const Platform&) = delete;

  // Wipes all memory and interrupt state and installs a new plan. Throws
  // OverlappingSEB, leaving the platform untouched, if two SEBs intersect.
  void configure(const hw::ValidatedPlan& plan);
  // Back to the unconfigured state; memory is wiped.
  void reset();
  bool configured() const;
  hw::ValidatedPlan plan() const;
  std::vector<Region> regions() const;
  Region region(hw::ResourceId resource) const;
  std::optional<hw::ResourceId> resource_at(std::uint64_t addr, std::uint64_t len) const;

  std::uint64_t bram_base(std::size_t enclave) const;
  std::uint64_t bram_size(std::size_t enclave) const;
  std::uint64_t seb_base(std::size_t enclave) const;
  std::size_t enclave_count() const;

  Bytes mem_read(std::string_view principal, std::uint64_t addr, std::uint64_t len);
  void mem_write(std::string_view principal, std::uint64_t addr, ByteView data);
  std::uint32_t read_u32(std::string_view principal, std::uint64_t addr);
  void write_u32(std::string_view principal, std::uint64_t addr, std::uint32_t value);

  // Boot-time configuration port. Only the boot chain writes through it.
  void provision(std::uint64_t addr, ByteView data);

  void raise_interrupt(std::string_view principal, std::size_t enclave, Line line);

  // The enclave-side view of its own interrupt controller.
  void set_line_enabled(std::size_t enclave, Line line, bool enabled);
  bool line_enabled(std::size_t enclave, Line line) const;
  bool pending(std::size_t enclave, Line line) const;
  // Highest-priority pending line, cleared on return. NewData ranks last.
  std::optional<Line> take_interrupt(std::size_t enclave, bool include_new_data = true);
  bool take_line(std::size_t enclave, Line line);
  bool wait_interrupt(std::size_t enclave, std::chrono::milliseconds timeout);

  void set_log_policy(LogPolicy policy);
  std::vector<Event> events() const;
  std::vector<Event> faults() const;
  std::string event_log() const;

 private:
  friend class PlatformTestPeer;

  static constexpr std::uint64_t kPageSize = 4096;
  using Page = std::array<std::uint8_t, kPageSize>;

  struct Controller {
    std::array<bool, kLineCount> enabled{};
    std::array<bool, kLineCount> pending{};
  };

  void require_configured() const;
  const Region* find_region(std::uint64_t addr, std::uint64_t len) const;
  void check_access(std::string_view principal, std::uint64_t addr, std::uint64_t len,
                    hw::PermissionSet needed, const char* op);
  void log(std::string_view principal, std::string op, std::uint64_t addr, std::uint64_t len,
           std::string outcome);
  void copy_out(std::uint64_t addr, std::span<std::uint8_t> out) const;
  void copy_in(std::uint64_t addr, ByteView data);
  bool is_enclave(std::string_view principal) const;

  mutable std::mutex mu_;
  std::condition_variable irq_cv_;
  std::optional<hw::ValidatedPlan> plan_;
  std::vector<Region> regions_;  // sorted by base
  std::vector<Controller> controllers_;
  std::unordered_map<std::uint64_t, Page> pages_;
  std::vector<Event> events_;
  std::vector<std::size_t> fault_index_;
  std::uint64_t seq_ = 0;
  LogPolicy policy_ = LogPolicy::kSkipGrantedEnclaveAccess;
};

}  // namespace fpgatee::sim
