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

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpgatee/crypto/keystore.hpp"
#include "fpgatee/firmware/image.hpp"
#include "fpgatee/firmware/session.hpp"
#include "fpgatee/hw/seb_layout.hpp"
#include "fpgatee/sim/platform.hpp"
#include "fpgatee/ssa/image.hpp"
#include "fpgatee/vm/vm.hpp"

namespace fpgatee::firmware {

enum class Phase : std::uint8_t {
  kIdle,
  kCopy,         // SEB -> BRAM staging
  kOpen,         // verify and decrypt the staged SSA*
  kAttest,       // PreExecAtt
  kLoad,         // sections to the load base
  kRestore,      // session blob -> BRAM
  kRun,
  kAwaitInput,
  kFinish,       // PostExecAtt, output and report to the SEB
  kSuspend,      // session blob to the SEB
  kCleanup,
};
std::string_view phase_name(Phase p);

struct FirmwareOptions {
  std::uint32_t copy_chunk = 1024;     // bytes moved per step while copying
  std::uint64_t slice = 64;            // VM instructions per step
  std::uint64_t step_budget = vm::kDefaultStepBudget;
  std::uint32_t load_base = vm::kDefaultLoadBase;
  std::uint32_t heap_size = vm::kDefaultHeapSize;
  std::uint32_t stack_size = vm::kDefaultStackSize;
  bool poll_new_data = false;          // read the SEB poll word instead of the NewData line
};

// BRAM offsets of the staging areas, top down from the end of BRAM.
struct Staging {
  std::uint64_t output = 0;
  std::uint64_t input = 0;
  std::uint64_t chal = 0;
  std::uint64_t m3 = 0;
  std::uint64_t ssa_star = 0;  // depends on the SSA* length of the current run
};

// The per-enclave firmware. Work is split into small steps so tests can
// interleave it with the untrusted side at fine grain; a real enclave would
// just loop. step() must only be called from one thread at a time.
class EnclaveFirmware {
 public:
  EnclaveFirmware(sim::Platform& platform, std::size_t enclave, const crypto::KeyStore& keys,
                  crypto::RandomSource& rng, FirmwareOptions options = {});
  ~EnclaveFirmware();
  EnclaveFirmware(const EnclaveFirmware&) = delete;
  EnclaveFirmware& operator=(const EnclaveFirmware&) = delete;

  // One unit of work. false means nothing can happen until the UA acts.
  bool step();
  // Steps until idle or waiting; returns the number of steps taken.
  std::size_t run_until_idle(std::size_t max_steps = SIZE_MAX);

  Phase phase() const { return phase_.load(); }
  // Step one of the current run (all SEB inputs copied to BRAM) is done.
  // Cleared again when the run ends.
  bool copy_complete() const { return copy_complete_.load(); }
  std::uint64_t yields() const { return yields_.load(); }
  std::uint64_t runs() const { return runs_.load(); }
  std::size_t enclave() const { return enclave_; }
  const std::string& principal() const { return name_; }
  // [0, firmware_end) is the firmware's own image in BRAM.
  std::uint64_t firmware_end() const { return fw_end_; }
  Staging staging() const { return staging_; }
  std::optional<ErrorCode> last_error() const { return last_error_; }
  std::string last_error_message() const { return last_error_message_; }

 private:
  struct Run;
  class Io;
  class Bus;

  void start(Mode mode, bool resume);
  void do_copy();
  void do_open();
  void do_attest();
  void do_load();
  void do_restore();
  void do_run();
  void do_finish();
  void do_suspend();
  void do_cleanup();
  bool at_yield_point(bool awaiting);
  bool take_new_data();
  void consume_input();
  void fail(ErrorCode code, const std::string& message);

  std::uint64_t seb(std::uint32_t offset) const { return seb_base_ + offset; }
  std::uint64_t bram(std::uint64_t offset) const { return bram_base_ + offset; }
  Bytes read_bram(std::uint64_t offset, std::uint64_t len);
  void write_bram(std::uint64_t offset, ByteView data);
  std::uint32_t read_seb_u32(std::uint32_t offset);
  void write_seb_u32(std::uint32_t offset, std::uint32_t value);
  FirmwareImage measure_firmware();

  sim::Platform& platform_;
  std::size_t enclave_;
  std::string name_;
  crypto::KeyStore keys_;
  crypto::RandomSource& rng_;
  FirmwareOptions options_;
  hw::SebLayout layout_;
  std::uint64_t bram_base_ = 0;
  std::uint64_t bram_size_ = 0;
  std::uint64_t seb_base_ = 0;
  std::uint64_t fw_end_ = 0;
  Staging staging_;

  std::unique_ptr<Run> run_;
  std::atomic<Phase> phase_{Phase::kIdle};
  std::atomic<bool> copy_complete_{false};
  std::atomic<std::uint64_t> yields_{0};
  std::atomic<std::uint64_t> runs_{0};
  std::optional<ErrorCode> last_error_;
  std::string last_error_message_;
};

}  // namespace fpgatee::firmware
