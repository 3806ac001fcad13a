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

#include <filesystem>
#include <string>

#include "fpgatee/bytes.hpp"
#include "fpgatee/crypto/keystore.hpp"
#include "fpgatee/sim/platform.hpp"
#include "fpgatee/error.hpp"
#include "fpgatee/hw/description.hpp"
#include "fpgatee/hw/plan.hpp"
#include "fpgatee/ssa/image.hpp"
#include "fpgatee/vm/vm.hpp"

#include <random>

namespace fpgatee::testing {

std::filesystem::path source_dir();
std::string read_text(const std::filesystem::path& path);
// The three-enclave example description shipped under share/hw.
std::string three_enclave_description();

// Limits used with random_description: 4 MiB of BRAM, full DRAM space.
hw::PlatformLimits random_limits();
// A random description that validates against random_limits(): 1..4 enclaves
// with disjoint SEBs and 0..4 peripherals (some shared BRAM, some MMIO).
hw::HardwareDescription random_description(std::mt19937_64& rng);
// Three enclaves of `bram` bytes each with disjoint SEBs, a UART for
// Enclave-1, a GPIO for the hardcore and Enclave-2, and a shared BRAM for
// Enclave-1 and Enclave-3.
hw::HardwareDescription three_enclave_sim_description(std::uint64_t bram = 128 * 1024);

// Assembles share/ssa/<name>.s.
ssa::SsaImage sample_ssa(const std::string& name);

// Feeds `chunks` in order; after the last one IN sees end of input.
class QueueIo final : public vm::VmIo {
 public:
  explicit QueueIo(std::vector<Bytes> chunks, std::size_t output_capacity = 8192)
      : chunks_(std::move(chunks)), capacity_(output_capacity) {}
  std::optional<Bytes> input(std::uint32_t max) override;
  bool output(ByteView data) override;
  const Bytes& out() const { return out_; }

 private:
  std::vector<Bytes> chunks_;
  std::size_t chunk_ = 0;
  std::size_t offset_ = 0;
  std::size_t capacity_;
  Bytes out_;
};

struct OfflineRun {
  vm::RunResult result = vm::RunResult::kRunning;
  vm::VmState state;
  Bytes output;
  std::size_t yields = 0;
};

// Runs an image on a flat memory, continuing through yields.
OfflineRun run_offline(const ssa::SsaImage& image, std::vector<Bytes> chunks,
                       std::uint64_t budget = vm::kDefaultStepBudget);

// Everything needed to boot a simulated board.
struct BootBundle {
  crypto::KeyStore keys;
  hw::ValidatedPlan plan;
  Bytes fsbl;
  Bytes ssbl;
  Bytes manifest;
  Bytes firmware;
  Bytes boot_image;
};

// fsbl "F", ssbl "S", the three-enclave sim description on the desk platform,
// the reference firmware, developer "dev-1".
BootBundle make_boot_bundle(std::uint64_t seed = 1, std::uint64_t bram = 128 * 1024,
                            const std::string& fw_version = "1.0");
Bytes build_boot_image(const BootBundle& b, std::uint64_t seed);

// Packs share/ssa/<name>.s for "dev-1" with a seeded IV.
Bytes protected_sample(const std::string& name, const crypto::KeyStore& keys, std::uint64_t seed = 7);

// Non-zero bytes in the enclave's BRAM at or above `from`.
std::size_t bram_residue(const sim::Platform& platform, std::size_t enclave, std::uint64_t from);

// Tries every (principal, resource, op) triple plus an unknown principal and
// returns one line per disagreement with the access matrix.
std::vector<std::string> isolation_violations(sim::Platform& platform);

}  // namespace fpgatee::testing

// Asserts that `stmt` throws fpgatee::Error with the given code.
#define EXPECT_FPGATEE_ERROR(stmt, expected_code)                                  \
  do {                                                                             \
    try {                                                                          \
      stmt;                                                                        \
      ADD_FAILURE() << "expected " << ::fpgatee::error_code_name(expected_code);   \
    } catch (const ::fpgatee::Error& e) {                                          \
      EXPECT_EQ(e.code(), expected_code) << e.what();                              \
    }                                                                              \
  } while (0)
