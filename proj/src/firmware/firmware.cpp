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

#include "fpgatee/firmware/firmware.hpp"

#include <algorithm>

#include "fpgatee/firmware/attestation.hpp"
#include "fpgatee/ssa/protected.hpp"

namespace fpgatee::firmware {

using hw::SebLayout;
using hw::SebStatus;
using sim::Line;

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::kIdle: return "idle";
    case Phase::kCopy: return "copy";
    case Phase::kOpen: return "open";
    case Phase::kAttest: return "attest";
    case Phase::kLoad: return "load";
    case Phase::kRestore: return "restore";
    case Phase::kRun: return "run";
    case Phase::kAwaitInput: return "await-input";
    case Phase::kFinish: return "finish";
    case Phase::kSuspend: return "suspend";
    case Phase::kCleanup: return "cleanup";
  }
  return "?";
}

namespace {

constexpr Line kStartLines[] = {Line::kLdExec, Line::kLdExecPreAtt, Line::kLdExecPostAtt, Line::kReExec};
constexpr std::uint64_t kZeroChunk = 64 * 1024;

}  // namespace

struct EnclaveFirmware::Run {
  struct Copy {
    std::uint32_t seb_offset = 0;
    std::uint64_t bram_offset = 0;
    std::uint64_t len = 0;
  };

  Mode mode = Mode::kPlain;
  bool resume = false;
  std::uint32_t ssa_len = 0;
  std::uint32_t input_len = 0;
  std::uint32_t ua_flags = 0;

  std::vector<Copy> copies;
  std::size_t copy_index = 0;
  std::uint64_t copy_done = 0;

  std::optional<ssa::SsaImage> image;
  crypto::Tag tag{};
  vm::MemoryLayout layout;
  vm::VmState vm;

  std::vector<Bytes> transcript;
  std::uint32_t cursor = 0;
  std::uint32_t chunk_len = 0;
  bool more = false;
  std::uint32_t out_len = 0;

  std::optional<crypto::Digest> pre;
  SebStatus final_status = SebStatus::kDone;
  std::uint32_t error_code = 0;

  ~Run() {
    if (image) {
      crypto::secure_zero(image->text);
      crypto::secure_zero(image->rodata);
      crypto::secure_zero(image->data);
    }
    for (auto& chunk : transcript) crypto::secure_zero(chunk);
    crypto::secure_zero(std::span(reinterpret_cast<std::uint8_t*>(vm.regs.data()), sizeof(vm.regs)));
  }
};

class EnclaveFirmware::Bus final : public vm::VmBus {
 public:
  explicit Bus(EnclaveFirmware& fw) : fw_(fw) {}
  void read(std::uint32_t addr, std::span<std::uint8_t> out) override {
    Bytes b = fw_.read_bram(addr, out.size());
    std::copy(b.begin(), b.end(), out.begin());
  }
  void write(std::uint32_t addr, ByteView data) override { fw_.write_bram(addr, data); }

 private:
  EnclaveFirmware& fw_;
};

class EnclaveFirmware::Io final : public vm::VmIo {
 public:
  Io(EnclaveFirmware& fw, Run& run) : fw_(fw), run_(run) {}

  std::optional<Bytes> input(std::uint32_t max) override {
    if (run_.cursor < run_.chunk_len) {
      std::uint32_t n = std::min(max, run_.chunk_len - run_.cursor);
      Bytes b = fw_.read_bram(fw_.staging_.input + run_.cursor, n);
      run_.cursor += n;
      return b;
    }
    if (run_.more) return std::nullopt;
    return Bytes{};
  }

  bool output(ByteView data) override {
    if (std::uint64_t{run_.out_len} + data.size() > fw_.layout_.sizes.output) return false;
    fw_.write_bram(fw_.staging_.output + run_.out_len, data);
    run_.out_len += static_cast<std::uint32_t>(data.size());
    return true;
  }

 private:
  EnclaveFirmware& fw_;
  Run& run_;
};

EnclaveFirmware::EnclaveFirmware(sim::Platform& platform, std::size_t enclave, const crypto::KeyStore& keys,
                                 crypto::RandomSource& rng, FirmwareOptions options)
    : platform_(platform), enclave_(enclave), keys_(keys), rng_(rng), options_(options) {
  hw::ValidatedPlan plan = platform_.plan();
  if (enclave >= plan.description.enclaves.size()) throw Error(ErrorCode::kInvalidState, "no such enclave");
  name_ = plan.description.enclaves[enclave].name;
  layout_ = plan.seb_layout();
  bram_base_ = platform_.bram_base(enclave);
  bram_size_ = platform_.bram_size(enclave);
  seb_base_ = platform_.seb_base(enclave);

  Bytes head = read_bram(0, std::min<std::uint64_t>(bram_size_, options_.load_base));
  fw_end_ = parse_firmware_prefix(head).second;

  std::uint64_t reserved = std::uint64_t{layout_.sizes.output} + layout_.sizes.input + 2 * SebLayout::kDigestSize;
  if (bram_size_ >= reserved) {
    staging_.output = bram_size_ - layout_.sizes.output;
    staging_.input = staging_.output - layout_.sizes.input;
    staging_.chal = staging_.input - SebLayout::kChalSize;
    staging_.m3 = staging_.chal - SebLayout::kDigestSize;
    staging_.ssa_star = staging_.m3;
  }
}

EnclaveFirmware::~EnclaveFirmware() = default;

Bytes EnclaveFirmware::read_bram(std::uint64_t offset, std::uint64_t len) {
  return platform_.mem_read(name_, bram(offset), len);
}

void EnclaveFirmware::write_bram(std::uint64_t offset, ByteView data) {
  platform_.mem_write(name_, bram(offset), data);
}

std::uint32_t EnclaveFirmware::read_seb_u32(std::uint32_t offset) { return platform_.read_u32(name_, seb(offset)); }

void EnclaveFirmware::write_seb_u32(std::uint32_t offset, std::uint32_t value) {
  platform_.write_u32(name_, seb(offset), value);
}

FirmwareImage EnclaveFirmware::measure_firmware() { return parse_firmware(read_bram(0, fw_end_)); }

bool EnclaveFirmware::step() {
  try {
    switch (phase_.load()) {
      case Phase::kIdle:
        for (Line line : kStartLines) {
          if (!platform_.take_line(enclave_, line)) continue;
          Mode mode = line == Line::kLdExecPreAtt ? Mode::kPreAtt
                      : line == Line::kLdExecPostAtt ? Mode::kPostAtt
                                                     : Mode::kPlain;
          start(mode, line == Line::kReExec);
          return true;
        }
        return false;
      case Phase::kCopy: do_copy(); return true;
      case Phase::kOpen: do_open(); return true;
      case Phase::kAttest: do_attest(); return true;
      case Phase::kLoad: do_load(); return true;
      case Phase::kRestore: do_restore(); return true;
      case Phase::kRun: do_run(); return true;
      case Phase::kAwaitInput: return at_yield_point(true);
      case Phase::kFinish: do_finish(); return true;
      case Phase::kSuspend: do_suspend(); return true;
      case Phase::kCleanup: do_cleanup(); return true;
    }
  } catch (const Error& e) {
    if (phase_.load() == Phase::kCleanup) {
      // Cleanup itself failed; the platform is gone or reconfigured.
      run_.reset();
      phase_ = Phase::kIdle;
      last_error_ = e.code();
      last_error_message_ = e.what();
      return true;
    }
    fail(e.code(), e.what());
  }
  return true;
}

std::size_t EnclaveFirmware::run_until_idle(std::size_t max_steps) {
  std::size_t n = 0;
  while (n < max_steps && step()) ++n;
  return n;
}

void EnclaveFirmware::start(Mode mode, bool resume) {
  run_ = std::make_unique<Run>();
  Run& r = *run_;
  r.mode = mode;
  r.resume = resume;
  copy_complete_ = false;
  ++runs_;
  if (!resume) yields_ = 0;
  last_error_.reset();
  last_error_message_.clear();
  phase_ = Phase::kCopy;

  write_seb_u32(layout_.status(), static_cast<std::uint32_t>(SebStatus::kBusy));
  write_seb_u32(layout_.fw_flags(), 0);
  write_seb_u32(layout_.error_code(), 0);
  write_seb_u32(layout_.output_len(), 0);
  platform_.take_line(enclave_, Line::kNewData);

  r.ssa_len = read_seb_u32(layout_.ssa_star_len());
  r.input_len = read_seb_u32(layout_.input_len());
  r.ua_flags = read_seb_u32(layout_.ua_flags());
  if (r.ssa_len > layout_.sizes.ssa_star) throw Error(ErrorCode::kBadSize, "SSA* length exceeds its region");
  if (r.input_len > layout_.sizes.input) throw Error(ErrorCode::kBadSize, "input length exceeds its region");
  if (staging_.m3 < std::uint64_t{options_.load_base} + r.ssa_len) {
    throw Error(ErrorCode::kCapacityExceeded, "enclave BRAM too small to stage this SSA*");
  }
  staging_.ssa_star = (staging_.m3 - r.ssa_len) & ~std::uint64_t{7};

  r.copies.push_back({layout_.ssa_star, staging_.ssa_star, r.ssa_len});
  r.copies.push_back({layout_.input, staging_.input, r.input_len});
  if (!resume) {
    r.copies.push_back({layout_.chal, staging_.chal, SebLayout::kChalSize});
    r.copies.push_back({layout_.m3(), staging_.m3, SebLayout::kDigestSize});
  }
}

void EnclaveFirmware::do_copy() {
  Run& r = *run_;
  while (r.copy_index < r.copies.size() && r.copy_done == r.copies[r.copy_index].len) {
    ++r.copy_index;
    r.copy_done = 0;
  }
  if (r.copy_index == r.copies.size()) {
    // Everything the run depends on is now in BRAM; the SEB can change freely.
    for (Line line : kStartLines) platform_.set_line_enabled(enclave_, line, false);
    copy_complete_ = true;
    phase_ = Phase::kOpen;
    return;
  }
  const Run::Copy& c = r.copies[r.copy_index];
  std::uint64_t n = std::min<std::uint64_t>(options_.copy_chunk, c.len - r.copy_done);
  Bytes chunk = platform_.mem_read(name_, seb(c.seb_offset) + r.copy_done, n);
  write_bram(c.bram_offset + r.copy_done, chunk);
  r.copy_done += n;
}

void EnclaveFirmware::do_open() {
  Run& r = *run_;
  Bytes blob = read_bram(staging_.ssa_star, r.ssa_len);
  r.tag = ssa::protected_tag(blob);
  r.image = ssa::open(blob, keys_);
  phase_ = r.resume ? Phase::kRestore : (r.mode == Mode::kPlain ? Phase::kLoad : Phase::kAttest);
}

void EnclaveFirmware::do_attest() {
  Run& r = *run_;
  FirmwareImage fw = measure_firmware();
  crypto::Digest m3 = crypto::Digest::from(read_bram(staging_.m3, SebLayout::kDigestSize));
  Bytes chal = read_bram(staging_.chal, SebLayout::kChalSize);
  Bytes input = read_bram(staging_.input, r.input_len);
  r.pre = pre_exec_att(keys_.attestation_key(), fw, m3, chal, input, *r.image);
  phase_ = Phase::kLoad;
}

namespace {

void check_fits(const vm::MemoryLayout& l, std::uint64_t fw_end, std::uint64_t staging_floor) {
  if (l.window_begin() < fw_end || l.window_end() > staging_floor) {
    throw Error(ErrorCode::kCapacityExceeded, "SSA memory window does not fit enclave BRAM");
  }
}

}  // namespace

void EnclaveFirmware::do_load() {
  Run& r = *run_;
  r.layout = vm::MemoryLayout::for_image(*r.image, options_.load_base, options_.heap_size, options_.stack_size);
  check_fits(r.layout, fw_end_, staging_.ssa_star);
  Bus bus(*this);
  vm::load_image(bus, r.layout, *r.image);
  r.vm = vm::VmState::initial(r.layout, *r.image);
  r.transcript = {read_bram(staging_.input, r.input_len)};
  r.cursor = 0;
  r.chunk_len = r.input_len;
  r.more = (r.ua_flags & hw::kUaInputMore) != 0;
  r.out_len = 0;
  phase_ = Phase::kRun;
}

void EnclaveFirmware::do_restore() {
  Run& r = *run_;
  Bytes blob = read_bram(staging_.input, r.input_len);
  const crypto::Key& key = keys_.developer_key(r.image->metadata.developer_id);
  SessionState s = open_session(blob, key, r.tag);

  r.layout = vm::MemoryLayout::for_image(*r.image, options_.load_base, options_.heap_size, options_.stack_size);
  check_fits(r.layout, fw_end_, staging_.ssa_star);
  if (s.writable.size() != r.layout.writable_end() - r.layout.writable_begin() ||
      s.output.size() > layout_.sizes.output || s.chal.size() != SebLayout::kChalSize || s.transcript.empty() ||
      s.transcript.back().size() > layout_.sizes.input) {
    throw Error(ErrorCode::kMalformedImage, "session does not match this SSA's memory layout");
  }

  Bus bus(*this);
  vm::load_image(bus, r.layout, *r.image);
  write_bram(r.layout.writable_begin(), s.writable);
  write_bram(staging_.output, s.output);
  write_bram(staging_.chal, s.chal);
  write_bram(staging_.m3, s.m3.view());
  Bytes scrub(r.input_len);
  write_bram(staging_.input, scrub);
  write_bram(staging_.input, s.transcript.back());

  r.vm = s.vm;
  r.vm.halted = false;
  r.vm.fault = vm::Fault::kNone;
  r.mode = s.mode;
  if (s.mode != Mode::kPlain) r.pre = s.pre;
  r.out_len = static_cast<std::uint32_t>(s.output.size());
  r.chunk_len = static_cast<std::uint32_t>(s.transcript.back().size());
  r.cursor = s.cursor;
  r.more = s.more_input;
  r.transcript = std::move(s.transcript);
  yields_ = s.yields;
  crypto::secure_zero(s.writable);
  crypto::secure_zero(s.output);
  phase_ = Phase::kRun;
}

void EnclaveFirmware::do_run() {
  Run& r = *run_;
  Io io(*this, r);
  Bus bus(*this);
  vm::Vm machine(r.layout, r.vm, bus, io, options_.step_budget);
  switch (machine.run(options_.slice)) {
    case vm::RunResult::kRunning:
      return;
    case vm::RunResult::kYielded:
      ++yields_;
      at_yield_point(false);
      return;
    case vm::RunResult::kAwaitingInput:
      at_yield_point(true);
      return;
    case vm::RunResult::kHalted:
      phase_ = Phase::kFinish;
      return;
    case vm::RunResult::kFaulted:
      throw Error(ErrorCode::kVmFault, std::string(vm::fault_name(r.vm.fault)) + " at pc " + std::to_string(r.vm.pc));
  }
}

bool EnclaveFirmware::take_new_data() {
  if (!options_.poll_new_data) return platform_.take_line(enclave_, Line::kNewData);
  if (read_seb_u32(layout_.new_data_poll()) == 0) return false;
  write_seb_u32(layout_.new_data_poll(), 0);
  return true;
}

// NewData and SusExp are only acted on here, between SSA instructions.
bool EnclaveFirmware::at_yield_point(bool awaiting) {
  if (platform_.take_line(enclave_, Line::kSusExp)) {
    phase_ = Phase::kSuspend;
    return true;
  }
  if (take_new_data()) {
    consume_input();
    if (phase_.load() == Phase::kAwaitInput) write_seb_u32(layout_.fw_flags(), 0);
    phase_ = Phase::kRun;
    return true;
  }
  if (!awaiting) {
    phase_ = Phase::kRun;
    return true;
  }
  if (phase_.load() != Phase::kAwaitInput) {
    write_seb_u32(layout_.fw_flags(), hw::kFwAwaitingInput);
    phase_ = Phase::kAwaitInput;
    return true;
  }
  return false;
}

void EnclaveFirmware::consume_input() {
  Run& r = *run_;
  std::uint32_t len = read_seb_u32(layout_.input_len());
  std::uint32_t flags = read_seb_u32(layout_.ua_flags());
  if (len > layout_.sizes.input) throw Error(ErrorCode::kBadSize, "input length exceeds its region");
  Bytes chunk = platform_.mem_read(name_, seb(layout_.input), len);
  Bytes scrub(layout_.sizes.input);
  write_bram(staging_.input, scrub);
  write_bram(staging_.input, chunk);
  r.transcript.push_back(read_bram(staging_.input, len));
  r.cursor = 0;
  r.chunk_len = len;
  r.more = (flags & hw::kUaInputMore) != 0;
}

void EnclaveFirmware::do_finish() {
  Run& r = *run_;
  Bytes output = read_bram(staging_.output, r.out_len);
  std::optional<crypto::Digest> post;
  if (r.mode == Mode::kPostAtt) {
    FirmwareImage fw = measure_firmware();
    crypto::Digest m3 = crypto::Digest::from(read_bram(staging_.m3, SebLayout::kDigestSize));
    Bytes chal = read_bram(staging_.chal, SebLayout::kChalSize);
    ssa::SsaImage loaded = *r.image;
    loaded.text = read_bram(r.layout.text_base, r.image->text.size());
    loaded.rodata = read_bram(r.layout.rodata_base, r.image->rodata.size());
    post = post_exec_att(keys_.attestation_key(), fw, m3, chal, r.transcript, output, loaded, *r.pre);
  }
  platform_.mem_write(name_, seb(layout_.output), output);
  write_seb_u32(layout_.output_len(), r.out_len);
  const Bytes zero(SebLayout::kDigestSize);
  std::uint32_t flags = 0;
  platform_.mem_write(name_, seb(layout_.pre_exec_att), r.pre ? r.pre->view() : ByteView(zero));
  platform_.mem_write(name_, seb(layout_.post_exec_att), post ? post->view() : ByteView(zero));
  if (r.pre) flags |= hw::kFwReportPre;
  if (post) flags |= hw::kFwReportPost;
  write_seb_u32(layout_.fw_flags(), flags);
  r.final_status = SebStatus::kDone;
  phase_ = Phase::kCleanup;
}

void EnclaveFirmware::do_suspend() {
  Run& r = *run_;
  SessionState s;
  s.binding = r.tag;
  s.mode = r.mode;
  s.vm = r.vm;
  s.yields = yields_;
  s.writable = read_bram(r.layout.writable_begin(), r.layout.writable_end() - r.layout.writable_begin());
  s.chal = read_bram(staging_.chal, SebLayout::kChalSize);
  s.m3 = crypto::Digest::from(read_bram(staging_.m3, SebLayout::kDigestSize));
  if (r.pre) s.pre = *r.pre;
  s.transcript = r.transcript;
  s.cursor = r.cursor;
  s.more_input = r.more;
  s.output = read_bram(staging_.output, r.out_len);
  Bytes blob = seal_session(s, keys_.developer_key(r.image->metadata.developer_id), rng_.array<crypto::kIvSize>());
  crypto::secure_zero(s.writable);
  crypto::secure_zero(s.output);
  if (blob.size() > layout_.sizes.output) {
    throw Error(ErrorCode::kCapacityExceeded, "session blob does not fit the output region");
  }
  platform_.mem_write(name_, seb(layout_.output), blob);
  write_seb_u32(layout_.output_len(), static_cast<std::uint32_t>(blob.size()));
  write_seb_u32(layout_.fw_flags(), hw::kFwSuspended);
  r.final_status = SebStatus::kDone;
  phase_ = Phase::kCleanup;
}

void EnclaveFirmware::do_cleanup() {
  SebStatus status = run_ ? run_->final_status : SebStatus::kError;
  std::uint32_t error = run_ ? run_->error_code : 0;
  const Bytes zeros(std::min<std::uint64_t>(kZeroChunk, bram_size_));
  for (std::uint64_t off = fw_end_; off < bram_size_; off += kZeroChunk) {
    std::uint64_t n = std::min<std::uint64_t>(kZeroChunk, bram_size_ - off);
    write_bram(off, ByteView(zeros).first(n));
  }
  run_.reset();
  platform_.take_line(enclave_, Line::kNewData);
  platform_.take_line(enclave_, Line::kSusExp);
  for (Line line : kStartLines) platform_.set_line_enabled(enclave_, line, true);
  write_seb_u32(layout_.error_code(), error);
  write_seb_u32(layout_.status(), static_cast<std::uint32_t>(status));
  copy_complete_ = false;
  phase_ = Phase::kIdle;
}

void EnclaveFirmware::fail(ErrorCode code, const std::string& message) {
  last_error_ = code;
  last_error_message_ = message;
  if (!run_) run_ = std::make_unique<Run>();
  run_->final_status = SebStatus::kError;
  run_->error_code = static_cast<std::uint32_t>(code) + 1;
  try {
    write_seb_u32(layout_.output_len(), 0);
    write_seb_u32(layout_.fw_flags(), 0);
  } catch (const Error&) {
  }
  phase_ = Phase::kCleanup;
}

}  // namespace fpgatee::firmware
