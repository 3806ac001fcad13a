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
#include <memory>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include "fpgatee/boot/boot.hpp"
#include "fpgatee/crypto/keystore.hpp"
#include "fpgatee/firmware/firmware.hpp"
#include "fpgatee/hw/seb_layout.hpp"
#include "fpgatee/sim/platform.hpp"
#include "fpgatee/verifier/verifier.hpp"

namespace fpgatee {

// The untrusted application's handle on one enclave: it can only touch the
// SEB and raise interrupts, all as the hardcore principal.
class UntrustedApp {
 public:
  UntrustedApp(sim::Platform& platform, std::size_t enclave);

  void reset_status();
  void load_ssa(ByteView protected_ssa);
  void write_input(ByteView chunk, bool more);
  void write_chal(const verifier::Challenge& chal);
  void signal_new_data(bool polling);
  void raise(sim::Line line);

  hw::SebStatus status();
  std::uint32_t fw_flags();
  std::uint32_t error_code();
  Bytes output();
  verifier::Report report();

  std::uint64_t seb(std::uint32_t offset) const { return seb_base_ + offset; }
  const hw::SebLayout& layout() const { return layout_; }

 private:
  sim::Platform& platform_;
  std::size_t enclave_;
  std::uint64_t seb_base_;
  hw::SebLayout layout_;
};

struct RunRequest {
  Bytes protected_ssa;
  std::vector<Bytes> input;  // first chunk goes in with LdExec, the rest via NewData
  firmware::Mode mode = firmware::Mode::kPlain;
  verifier::Challenge chal{};
  bool poll_new_data = false;
  // Ask for a suspension at this yield (1-based, counted over the whole session).
  std::optional<std::uint64_t> suspend_at_yield;
};

struct RunOutcome {
  hw::SebStatus status = hw::SebStatus::kIdle;
  std::uint32_t error_code = 0;  // ErrorCode + 1, 0 for none
  std::uint32_t fw_flags = 0;
  Bytes output;                  // the session blob when suspended
  verifier::Report report;
  bool suspended() const { return (fw_flags & hw::kFwSuspended) != 0; }
  std::optional<ErrorCode> error() const {
    if (error_code == 0) return std::nullopt;
    return static_cast<ErrorCode>(error_code - 1);
  }
};

struct DeviceOptions {
  firmware::FirmwareOptions firmware;
  bool threaded = false;  // one host thread per enclave firmware
  sim::LogPolicy log_policy = sim::LogPolicy::kSkipGrantedEnclaveAccess;
};

// A booted simulated board: platform, one firmware per enclave, and a
// synchronous UA driver on top.
class Device {
 public:
  Device(crypto::KeyStore keys, crypto::RandomSource& rng, DeviceOptions options = {});
  ~Device();
  Device(const Device&) = delete;
  Device& operator=(const Device&) = delete;

  boot::BootResult boot(ByteView boot_image);
  boot::BootResult reconfigure(ByteView boot_image);

  sim::Platform& platform() { return platform_; }
  firmware::EnclaveFirmware& firmware(std::size_t enclave) { return *firmwares_.at(enclave); }
  std::size_t enclave_count() const { return firmwares_.size(); }
  std::size_t enclave_index(std::string_view name) const;
  UntrustedApp ua(std::size_t enclave) { return UntrustedApp(platform_, enclave); }

  RunOutcome run(std::size_t enclave, const RunRequest& request);
  // Hands a session blob back with ReExec. `input` continues the stream.
  RunOutcome resume(std::size_t enclave, ByteView protected_ssa, ByteView session, std::vector<Bytes> input = {},
                    bool poll_new_data = false, std::optional<std::uint64_t> suspend_at_yield = std::nullopt);

 private:
  void start_firmware();
  void stop_threads();
  RunOutcome drive(std::size_t enclave, std::vector<Bytes> pending, bool poll,
                   std::optional<std::uint64_t> suspend_at);

  crypto::KeyStore keys_;
  crypto::RandomSource& rng_;
  DeviceOptions options_;
  sim::Platform platform_;
  std::vector<std::unique_ptr<firmware::EnclaveFirmware>> firmwares_;
  std::vector<std::thread> threads_;
  std::atomic<bool> stop_{false};
};

}  // namespace fpgatee
