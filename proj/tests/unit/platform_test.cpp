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

#include <chrono>
#include <thread>

#include "fpgatee/hw/description.hpp"
#include "fpgatee/sim/platform.hpp"
#include "platform_peer.hpp"
#include "test_support.hpp"

namespace fpgatee::sim {
namespace {

using hw::ResourceId;
using K = hw::ResourceId::Kind;
using testing::three_enclave_sim_description;

const std::string kHardcore(hw::kHardcoreSystem);

class PlatformTest : public ::testing::Test {
 protected:
  PlatformTest() : plan_(hw::validate(three_enclave_sim_description(), hw::PlatformLimits::desk())) {
    platform_.configure(plan_);
  }

  std::uint64_t base(K kind, std::uint32_t index) { return platform_.region({kind, index}).base; }
  std::size_t shared_index() {
    for (const auto& r : platform_.regions()) {
      if (r.resource.kind == K::kSharedBram) return r.resource.index;
    }
    ADD_FAILURE() << "no shared BRAM";
    return 0;
  }

  hw::ValidatedPlan plan_;
  Platform platform_;
};

TEST_F(PlatformTest, HardcoreFillsSebInput) {
  auto layout = plan_.seb_layout();
  std::uint64_t input = base(K::kSeb, 0) + layout.input;
  platform_.mem_write(kHardcore, input, to_bytes("abc"));
  EXPECT_EQ(to_string(platform_.mem_read(kHardcore, input, 3)), "abc");
  // The enclave sees the same bytes through its own SEB window.
  EXPECT_EQ(to_string(platform_.mem_read("Enclave-1", input, 3)), "abc");
}

TEST_F(PlatformTest, HardcoreCannotReadEnclaveBram) {
  EXPECT_FPGATEE_ERROR(platform_.mem_read(kHardcore, base(K::kEnclaveBram, 0), 4), ErrorCode::kAccessDenied);
}

TEST_F(PlatformTest, SharedBramFollowsItsAccessList) {
  std::uint64_t shared = base(K::kSharedBram, static_cast<std::uint32_t>(shared_index()));
  platform_.mem_write("Enclave-3", shared, to_bytes("hi"));
  EXPECT_EQ(to_string(platform_.mem_read("Enclave-1", shared, 2)), "hi");
  EXPECT_FPGATEE_ERROR(platform_.mem_read("Enclave-2", shared, 2), ErrorCode::kAccessDenied);
}

TEST_F(PlatformTest, EnclavesCannotReachEachOther) {
  EXPECT_FPGATEE_ERROR(platform_.mem_read("Enclave-1", base(K::kEnclaveBram, 1), 1), ErrorCode::kAccessDenied);
  EXPECT_FPGATEE_ERROR(platform_.mem_write("Enclave-2", base(K::kSeb, 0), to_bytes("x")), ErrorCode::kAccessDenied);
}

TEST_F(PlatformTest, SnapshotMirrorsPermittedReads) {
  platform_.mem_write("Enclave-1", base(K::kEnclaveBram, 0) + 16, to_bytes("secret"));
  Bytes raw = PlatformTestPeer::snapshot_region(platform_, {K::kEnclaveBram, 0});
  EXPECT_EQ(raw.size(), platform_.bram_size(0));
  EXPECT_EQ(to_string(ByteView(raw).subspan(16, 6)), "secret");
  EXPECT_EQ(platform_.mem_read("Enclave-1", base(K::kEnclaveBram, 0) + 16, 6), Bytes(raw.begin() + 16, raw.begin() + 22));
}

TEST_F(PlatformTest, IsolationIsExhaustive) {
  auto bad = testing::isolation_violations(platform_);
  EXPECT_TRUE(bad.empty()) << bad.size() << " violations, first: " << (bad.empty() ? "" : bad.front());
}

TEST_F(PlatformTest, IsolationHoldsOnRandomPlans) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    Platform p(hw::validate(testing::random_description(rng), testing::random_limits()));
    auto bad = testing::isolation_violations(p);
    ASSERT_TRUE(bad.empty()) << "plan " << i << ": " << bad.front();
  }
}

TEST_F(PlatformTest, DenialHasNoSideEffectsAndIsLogged) {
  std::uint64_t bram = base(K::kEnclaveBram, 0);
  platform_.mem_write("Enclave-1", bram, to_bytes("keep"));
  Bytes before = PlatformTestPeer::snapshot_region(platform_, {K::kEnclaveBram, 0});
  std::size_t faults = platform_.faults().size();

  EXPECT_FPGATEE_ERROR(platform_.mem_write(kHardcore, bram, to_bytes("evil")), ErrorCode::kAccessDenied);
  EXPECT_EQ(PlatformTestPeer::snapshot_region(platform_, {K::kEnclaveBram, 0}), before);

  auto f = platform_.faults();
  ASSERT_EQ(f.size(), faults + 1);
  EXPECT_EQ(f.back().principal, kHardcore);
  EXPECT_EQ(f.back().op, "write");
  EXPECT_EQ(f.back().addr, bram);
  EXPECT_EQ(f.back().outcome, "denied");
}

TEST_F(PlatformTest, FaultLogIsAppendOnly) {
  std::vector<Event> seen;
  for (int i = 0; i < 5; ++i) {
    EXPECT_THROW(platform_.mem_read("Enclave-2", base(K::kEnclaveBram, 0) + i, 1), Error);
    auto now = platform_.faults();
    ASSERT_EQ(now.size(), seen.size() + 1);
    for (std::size_t j = 0; j < seen.size(); ++j) EXPECT_EQ(now[j].to_string(), seen[j].to_string());
    EXPECT_GT(now.back().seq, seen.empty() ? 0 : seen.back().seq);
    seen = now;
  }
}

TEST_F(PlatformTest, EventLogIsDeterministic) {
  auto script = [&](Platform& p) {
    p.mem_write(kHardcore, base(K::kSeb, 1), to_bytes("ab"));
    try {
      p.mem_read(kHardcore, base(K::kEnclaveBram, 1), 8);
    } catch (const Error&) {
    }
    p.raise_interrupt(kHardcore, 1, Line::kLdExec);
    p.raise_interrupt(kHardcore, 1, Line::kLdExec);
    return p.event_log();
  };
  Platform a(plan_), b(plan_);
  std::string log = script(a);
  EXPECT_EQ(log, script(b));
  EXPECT_NE(log.find("Hardcore system read 0x"), std::string::npos) << log;
  EXPECT_NE(log.find("denied"), std::string::npos);
  EXPECT_NE(log.find("coalesced"), std::string::npos);
}

TEST_F(PlatformTest, RaiseWhileEnabledDeliversOnce) {
  platform_.raise_interrupt(kHardcore, 0, Line::kLdExec);
  platform_.raise_interrupt(kHardcore, 0, Line::kLdExec);
  EXPECT_EQ(platform_.take_interrupt(0), Line::kLdExec);
  EXPECT_EQ(platform_.take_interrupt(0), std::nullopt);
}

TEST_F(PlatformTest, RaiseOnDisabledLineRecordsNothing) {
  platform_.set_line_enabled(0, Line::kLdExec, false);
  platform_.raise_interrupt(kHardcore, 0, Line::kLdExec);
  EXPECT_FALSE(platform_.pending(0, Line::kLdExec));
  platform_.set_line_enabled(0, Line::kLdExec, true);
  EXPECT_EQ(platform_.take_interrupt(0), std::nullopt);
}

TEST_F(PlatformTest, DisablingDropsPending) {
  platform_.raise_interrupt(kHardcore, 0, Line::kSusExp);
  platform_.set_line_enabled(0, Line::kSusExp, false);
  platform_.set_line_enabled(0, Line::kSusExp, true);
  EXPECT_FALSE(platform_.pending(0, Line::kSusExp));
}

TEST_F(PlatformTest, NewDataRanksLast) {
  for (Line l : {Line::kNewData, Line::kLdExec, Line::kReExec, Line::kSusExp, Line::kLdExecPreAtt,
                 Line::kLdExecPostAtt}) {
    platform_.raise_interrupt(kHardcore, 2, l);
  }
  std::vector<Line> order;
  while (auto l = platform_.take_interrupt(2)) order.push_back(*l);
  ASSERT_EQ(order.size(), kLineCount);
  EXPECT_EQ(order.back(), Line::kNewData);

  platform_.raise_interrupt(kHardcore, 2, Line::kNewData);
  EXPECT_EQ(platform_.take_interrupt(2, false), std::nullopt);
  EXPECT_TRUE(platform_.pending(2, Line::kNewData));
}

TEST_F(PlatformTest, InterruptsAreScopedToTheirEnclave) {
  platform_.raise_interrupt(kHardcore, 1, Line::kLdExec);
  EXPECT_EQ(platform_.take_interrupt(0), std::nullopt);
  EXPECT_EQ(platform_.take_interrupt(1), Line::kLdExec);
  EXPECT_FPGATEE_ERROR(platform_.raise_interrupt("Enclave-1", 1, Line::kLdExec), ErrorCode::kAccessDenied);
}

TEST_F(PlatformTest, WaitWakesOnRaise) {
  std::thread raiser([&] {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    platform_.raise_interrupt(kHardcore, 0, Line::kNewData);
  });
  EXPECT_TRUE(platform_.wait_interrupt(0, std::chrono::milliseconds(5000)));
  raiser.join();
  EXPECT_FALSE(platform_.wait_interrupt(1, std::chrono::milliseconds(1)));
}

TEST_F(PlatformTest, ConcurrentWritersStayIsolated) {
  std::uint64_t b0 = base(K::kEnclaveBram, 0);
  std::uint64_t b1 = base(K::kEnclaveBram, 1);
  std::thread t0([&] {
    for (int i = 0; i < 2000; ++i) platform_.write_u32("Enclave-1", b0 + 4 * (i % 64), i);
  });
  std::thread t1([&] {
    for (int i = 0; i < 2000; ++i) platform_.write_u32("Enclave-2", b1 + 4 * (i % 64), ~i);
  });
  std::thread t2([&] {
    for (int i = 0; i < 2000; ++i) EXPECT_THROW(platform_.read_u32(kHardcore, b0 + 4 * (i % 64)), Error);
  });
  t0.join();
  t1.join();
  t2.join();
  EXPECT_EQ(platform_.read_u32("Enclave-1", b0 + 4 * 63), 1983u);
  EXPECT_EQ(platform_.read_u32("Enclave-2", b1), ~1984u);
}

TEST(PlatformLifecycle, UnconfiguredRefusesAccess) {
  Platform p;
  EXPECT_FALSE(p.configured());
  EXPECT_FPGATEE_ERROR(p.mem_read(std::string(hw::kHardcoreSystem), 0, 1), ErrorCode::kInvalidState);
}

TEST(PlatformLifecycle, ResetWipesMemory) {
  auto plan = hw::validate(three_enclave_sim_description(), hw::PlatformLimits::desk());
  Platform p(plan);
  std::uint64_t bram = p.bram_base(0);
  p.mem_write("Enclave-1", bram, to_bytes("x"));
  p.reset();
  EXPECT_FALSE(p.configured());
  p.configure(plan);
  EXPECT_EQ(p.mem_read("Enclave-1", bram, 1), Bytes{0});
}

}  // namespace
}  // namespace fpgatee::sim
