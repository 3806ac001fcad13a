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

#include <gtest/gtest.h>

#include <thread>

#include "fpgatee/device.hpp"
#include "test_support.hpp"

namespace fpgatee {
namespace {

using firmware::Mode;

RunRequest request(const testing::BootBundle& b, const std::string& ssa, std::vector<Bytes> input, Mode mode) {
  RunRequest req;
  req.protected_ssa = testing::protected_sample(ssa, b.keys);
  req.input = std::move(input);
  req.mode = mode;
  req.chal.fill(0x42);
  return req;
}

TEST(DeviceTest, ThreadedMatchesStepped) {
  auto b = testing::make_boot_bundle();
  crypto::DeterministicRandom r1(1), r2(1);
  Device stepped(b.keys, r1);
  DeviceOptions opts;
  opts.threaded = true;
  Device threaded(b.keys, r2, opts);
  stepped.boot(b.boot_image);
  threaded.boot(b.boot_image);

  std::vector<Bytes> chunks = {{9, 0, 0, 0}, {1, 0, 0, 0}};
  for (auto& [ssa, input] : std::vector<std::pair<std::string, std::vector<Bytes>>>{
           {"echo", {to_bytes("abc")}}, {"stream_sum", chunks}, {"factorial", {{7, 0, 0, 0}}}}) {
    RunOutcome a = stepped.run(0, request(b, ssa, input, Mode::kPostAtt));
    RunOutcome t = threaded.run(0, request(b, ssa, input, Mode::kPostAtt));
    EXPECT_EQ(a.status, hw::SebStatus::kDone) << ssa;
    EXPECT_EQ(t.status, a.status) << ssa;
    EXPECT_EQ(t.output, a.output) << ssa;
    EXPECT_EQ(t.report, a.report) << ssa;
  }
}

TEST(DeviceTest, EnclavesRunConcurrently) {
  auto b = testing::make_boot_bundle();
  crypto::DeterministicRandom rng(2);
  DeviceOptions opts;
  opts.threaded = true;
  Device dev(b.keys, rng, opts);
  dev.boot(b.boot_image);
  std::vector<RunRequest> reqs;
  for (std::size_t e = 0; e < 3; ++e) {
    reqs.push_back(request(b, "xor_cipher", {Bytes(64, static_cast<std::uint8_t>(e))}, Mode::kPlain));
  }
  std::vector<RunOutcome> outs(3);
  std::vector<std::thread> uas;
  for (std::size_t e = 0; e < 3; ++e) {
    uas.emplace_back([&, e] {
      for (int i = 0; i < 5; ++i) outs[e] = dev.run(e, reqs[e]);
    });
  }
  for (auto& t : uas) t.join();
  for (std::size_t e = 0; e < 3; ++e) {
    EXPECT_EQ(outs[e].status, hw::SebStatus::kDone);
    ASSERT_EQ(outs[e].output.size(), 64u);
    EXPECT_EQ(outs[e].output[0], static_cast<std::uint8_t>(e ^ 0x3a));
  }
  EXPECT_TRUE(dev.platform().faults().empty()) << dev.platform().event_log();
}

TEST(DeviceTest, EnclaveLookup) {
  auto b = testing::make_boot_bundle();
  crypto::DeterministicRandom rng(2);
  Device dev(b.keys, rng);
  dev.boot(b.boot_image);
  EXPECT_EQ(dev.enclave_count(), 3u);
  EXPECT_EQ(dev.enclave_index("Enclave-2"), 1u);
  EXPECT_FPGATEE_ERROR(dev.enclave_index("Enclave-9"), ErrorCode::kUnknownPrincipal);
}

TEST(DeviceTest, WaitingSsaWithoutInputIsReported) {
  auto b = testing::make_boot_bundle();
  crypto::DeterministicRandom rng(2);
  Device dev(b.keys, rng);
  dev.boot(b.boot_image);
  RunRequest req = request(b, "stream_sum", {{1, 0, 0, 0}}, Mode::kPlain);
  // The UA promises more input but never sends it.
  UntrustedApp ua = dev.ua(0);
  ua.reset_status();
  ua.load_ssa(req.protected_ssa);
  ua.write_input(req.input[0], true);
  ua.raise(sim::Line::kLdExec);
  dev.firmware(0).run_until_idle();
  EXPECT_EQ(dev.firmware(0).phase(), firmware::Phase::kAwaitInput);
  EXPECT_EQ(ua.fw_flags() & hw::kFwAwaitingInput, hw::kFwAwaitingInput);
  ua.write_input({}, false);
  ua.signal_new_data(false);
  dev.firmware(0).run_until_idle();
  EXPECT_EQ(ua.status(), hw::SebStatus::kDone);
}

}  // namespace
}  // namespace fpgatee
