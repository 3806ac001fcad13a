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

#ifndef FPGATEE_TEST_HOOKS
#error "platform_peer.hpp is only for test builds"
#endif

#include "fpgatee/sim/platform.hpp"

namespace fpgatee::sim {

// Raw reads that bypass access control and the event log.
class PlatformTestPeer {
 public:
  static Bytes snapshot(const Platform& p, std::uint64_t addr, std::uint64_t len) {
    std::lock_guard lock(p.mu_);
    Bytes out(len);
    p.copy_out(addr, out);
    return out;
  }

  static Bytes snapshot_region(const Platform& p, hw::ResourceId resource) {
    Region r = p.region(resource);
    return snapshot(p, r.base, r.size);
  }
};

}  // namespace fpgatee::sim
