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

#include "fpgatee/device.hpp"

#include <chrono>
#include <deque>

namespace fpgatee {

using hw::SebStatus;
using sim::Line;

UntrustedApp::UntrustedApp(sim::Platform& platform, std::size_t enclave)
    : platform_(platform),
      enclave_(enclave),
      seb_base_(platform.seb_base(enclave)),
      layout_(platform.plan().seb_layout()) {}

namespace {
const std::string kHardcore(hw::kHardcoreSystem);
}  // namespace

void UntrustedApp::reset_status() {
  platform_.write_u32(kHardcore, seb(layout_.status()), static_cast<std::uint32_t>(SebStatus::kIdle));
  platform_.write_u32(kHardcore, seb(layout_.new_data_poll()), 0);
}

void UntrustedApp::load_ssa(ByteView protected_ssa) {
  if (protected_ssa.size() > layout_.sizes.ssa_star) {
    throw Error(ErrorCode::kCapacityExceeded, "SSA* larger than the SEB region");
  }
  platform_.mem_write(kHardcore, seb(layout_.ssa_star), protected_ssa);
  platform_.write_u32(kHardcore, seb(layout_.ssa_star_len()), static_cast<std::uint32_t>(protected_ssa.size()));
}

void UntrustedApp::write_input(ByteView chunk, bool more) {
  if (chunk.size() > layout_.sizes.input) throw Error(ErrorCode::kCapacityExceeded, "input chunk too large");
  platform_.mem_write(kHardcore, seb(layout_.input), chunk);
  platform_.write_u32(kHardcore, seb(layout_.input_len()), static_cast<std::uint32_t>(chunk.size()));
  platform_.write_u32(kHardcore, seb(layout_.ua_flags()), more ? hw::kUaInputMore : 0);
}

void UntrustedApp::write_chal(const verifier::Challenge& chal) {
  platform_.mem_write(kHardcore, seb(layout_.chal), chal);
}

void UntrustedApp::signal_new_data(bool polling) {
  if (polling) {
    platform_.write_u32(kHardcore, seb(layout_.new_data_poll()), 1);
  } else {
    platform_.raise_interrupt(kHardcore, enclave_, Line::kNewData);
  }
}

void UntrustedApp::raise(Line line) { platform_.raise_interrupt(kHardcore, enclave_, line); }

SebStatus UntrustedApp::status() {
  return static_cast<SebStatus>(platform_.read_u32(kHardcore, seb(layout_.status())));
}

std::uint32_t UntrustedApp::fw_flags() { return platform_.read_u32(kHardcore, seb(layout_.fw_flags())); }

std::uint32_t UntrustedApp::error_code() { return platform_.read_u32(kHardcore, seb(layout_.error_code())); }

Bytes UntrustedApp::output() {
  std::uint32_t len = platform_.read_u32(kHardcore, seb(layout_.output_len()));
  if (len > layout_.sizes.output) throw Error(ErrorCode::kBadSize, "output length exceeds its region");
  return platform_.mem_read(kHardcore, seb(layout_.output), len);
}

verifier::Report UntrustedApp::report() {
  verifier::Report r;
  Bytes chal = platform_.mem_read(kHardcore, seb(layout_.chal), verifier::kChalSize);
  std::copy(chal.begin(), chal.end(), r.chal.begin());
  r.m3 = crypto::Digest::from(platform_.mem_read(kHardcore, seb(layout_.m3()), crypto::kDigestSize));
  r.pre = crypto::Digest::from(platform_.mem_read(kHardcore, seb(layout_.pre_exec_att), crypto::kDigestSize));
  if (fw_flags() & hw::kFwReportPost) {
    r.post = crypto::Digest::from(platform_.mem_read(kHardcore, seb(layout_.post_exec_att), crypto::kDigestSize));
  }
  return r;
}

Device::Device(crypto::KeyStore keys, crypto::RandomSource& rng, DeviceOptions options)
    : keys_(std::move(keys)), rng_(rng), options_(options) {
  platform_.set_log_policy(options_.log_policy);
}

Device::~Device() { stop_threads(); }

void Device::stop_threads() {
  stop_ = true;
  for (auto& t : threads_) t.join();
  threads_.clear();
  stop_ = false;
}

void Device::start_firmware() {
  firmwares_.clear();
  for (std::size_t i = 0; i < platform_.enclave_count(); ++i) {
    firmwares_.push_back(std::make_unique<firmware::EnclaveFirmware>(platform_, i, keys_, rng_, options_.firmware));
  }
  if (!options_.threaded) return;
  for (std::size_t i = 0; i < firmwares_.size(); ++i) {
    threads_.emplace_back([this, i] {
      while (!stop_.load()) {
        if (!firmwares_[i]->step()) platform_.wait_interrupt(i, std::chrono::milliseconds(1));
      }
    });
  }
}

boot::BootResult Device::boot(ByteView boot_image) {
  stop_threads();
  firmwares_.clear();
  boot::BootResult result = boot::boot_load(boot_image, keys_, platform_);
  start_firmware();
  return result;
}

boot::BootResult Device::reconfigure(ByteView boot_image) {
  stop_threads();
  firmwares_.clear();
  boot::BootResult result = boot::reconfigure(boot_image, keys_, platform_);
  start_firmware();
  return result;
}

std::size_t Device::enclave_index(std::string_view name) const {
  auto i = platform_.plan().description.find_enclave(name);
  if (!i) throw Error(ErrorCode::kUnknownPrincipal, "no enclave named '" + std::string(name) + "'");
  return *i;
}

RunOutcome Device::run(std::size_t enclave, const RunRequest& req) {
  UntrustedApp ua = this->ua(enclave);
  ua.reset_status();
  ua.load_ssa(req.protected_ssa);
  ua.write_chal(req.chal);
  std::vector<Bytes> pending = req.input;
  Bytes first = pending.empty() ? Bytes{} : pending.front();
  if (!pending.empty()) pending.erase(pending.begin());
  ua.write_input(first, !pending.empty());
  Line line = req.mode == firmware::Mode::kPreAtt    ? Line::kLdExecPreAtt
              : req.mode == firmware::Mode::kPostAtt ? Line::kLdExecPostAtt
                                                     : Line::kLdExec;
  if (req.suspend_at_yield && *req.suspend_at_yield == 0) ua.raise(Line::kSusExp);
  ua.raise(line);
  return drive(enclave, std::move(pending), req.poll_new_data, req.suspend_at_yield);
}

RunOutcome Device::resume(std::size_t enclave, ByteView protected_ssa, ByteView session, std::vector<Bytes> input,
                          bool poll_new_data, std::optional<std::uint64_t> suspend_at_yield) {
  UntrustedApp ua = this->ua(enclave);
  ua.reset_status();
  ua.load_ssa(protected_ssa);
  ua.write_input(session, false);
  ua.raise(Line::kReExec);
  return drive(enclave, std::move(input), poll_new_data, suspend_at_yield);
}

RunOutcome Device::drive(std::size_t enclave, std::vector<Bytes> pending_chunks, bool poll,
                         std::optional<std::uint64_t> suspend_at) {
  UntrustedApp ua = this->ua(enclave);
  firmware::EnclaveFirmware& fw = firmware(enclave);
  std::deque<Bytes> pending(pending_chunks.begin(), pending_chunks.end());
  bool suspend_raised = false;
  bool started = false;
  std::size_t spins = 0;

  auto maybe_raise_suspend = [&] {
    if (!suspend_at || suspend_raised) return;
    firmware::Phase p = fw.phase();
    if ((p == firmware::Phase::kRun || p == firmware::Phase::kAwaitInput) && fw.yields() + 1 >= *suspend_at) {
      ua.raise(Line::kSusExp);
      suspend_raised = true;
    }
  };
  auto feed = [&] {
    if (pending.empty() || !(ua.fw_flags() & hw::kFwAwaitingInput)) return false;
    Bytes chunk = std::move(pending.front());
    pending.pop_front();
    ua.write_input(chunk, !pending.empty());
    ua.signal_new_data(poll);
    return true;
  };

  while (true) {
    if (!options_.threaded) {
      bool progressed = fw.step();
      started = started || fw.phase() != firmware::Phase::kIdle;
      maybe_raise_suspend();
      if (progressed) continue;
      if (feed()) continue;
      if (!started) throw Error(ErrorCode::kInvalidState, "firmware did not pick up the request");
      if (fw.phase() == firmware::Phase::kAwaitInput) {
        throw Error(ErrorCode::kInvalidState, "SSA is waiting for input that the request does not have");
      }
      break;
    }
    // Threaded: poll the SEB like a real UA would.
    maybe_raise_suspend();
    SebStatus s = ua.status();
    if ((s == SebStatus::kDone || s == SebStatus::kError) && fw.phase() == firmware::Phase::kIdle) break;
    if (feed()) continue;
    if (++spins % 64 == 0) std::this_thread::sleep_for(std::chrono::microseconds(50));
    if (spins > 50'000'000) throw Error(ErrorCode::kInvalidState, "enclave did not finish");
  }

  RunOutcome out;
  out.status = ua.status();
  out.error_code = ua.error_code();
  out.fw_flags = ua.fw_flags();
  out.output = ua.output();
  out.report = ua.report();
  return out;
}

}  // namespace fpgatee
