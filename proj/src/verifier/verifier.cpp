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

#include "fpgatee/verifier/verifier.hpp"

#include <algorithm>

#include "fpgatee/firmware/attestation.hpp"
#include "fpgatee/firmware/image.hpp"
#include "fpgatee/ssa/protected.hpp"

namespace fpgatee::verifier {

Bytes Report::serialize() const {
  ByteWriter w;
  w.raw(kReportMagic).raw(chal).raw(m3.view()).raw(pre.view()).u8(post ? 1 : 0);
  if (post) w.raw(post->view());
  return std::move(w).take();
}

Report Report::parse(ByteView bytes) {
  if (bytes.size() < kReportMagic.size() || to_string(bytes.first(kReportMagic.size())) != kReportMagic) {
    throw Error(ErrorCode::kBadMagic, "not an attestation report");
  }
  ByteReader r(bytes.subspan(kReportMagic.size()));
  Report rep;
  ByteView chal = r.raw(kChalSize);
  std::copy(chal.begin(), chal.end(), rep.chal.begin());
  rep.m3 = crypto::Digest::from(r.raw(crypto::kDigestSize));
  rep.pre = crypto::Digest::from(r.raw(crypto::kDigestSize));
  std::uint8_t flag = r.u8();
  if (flag > 1) r.fail("post flag");
  if (flag == 1) rep.post = crypto::Digest::from(r.raw(crypto::kDigestSize));
  r.expect_done("report");
  return rep;
}

Challenge ChallengeLedger::issue(crypto::RandomSource& rng) {
  std::lock_guard lock(mu_);
  Challenge c{};
  do {
    rng.fill(c);
  } while (issued_.contains(c));
  issued_.insert(c);
  return c;
}

void ChallengeLedger::consume(const Challenge& chal) {
  std::lock_guard lock(mu_);
  if (!issued_.contains(chal)) throw Error(ErrorCode::kReplayDetected, "challenge was never issued");
  if (!used_.insert(chal).second) throw Error(ErrorCode::kReplayDetected, "challenge already used");
}

bool ChallengeLedger::outstanding(const Challenge& chal) const {
  std::lock_guard lock(mu_);
  return issued_.contains(chal) && !used_.contains(chal);
}

GoldenSet GoldenSet::from_boot_image(ByteView boot_image, const crypto::KeyStore& keys) {
  boot::BootImage image = boot::BootImage::parse(boot_image);
  boot::FpgaContents contents = boot::open_fpga_image(image.fpga_image, keys.device_key());
  GoldenSet g;
  g.fsbl = image.fsbl;
  g.ssbl = image.ssbl;
  g.manifest = contents.manifest;
  g.firmware = contents.firmware;
  g.keys = keys;
  return g;
}

namespace {

template <typename T>
const T& need(const std::optional<T>& v, const char* what) {
  if (!v) throw Error(ErrorCode::kMissingGolden, std::string("golden set lacks ") + what);
  return *v;
}

ssa::SsaImage golden_ssa(const GoldenSet& g) {
  return ssa::open(need(g.protected_ssa, "the protected SSA"), need(g.keys, "keys"));
}

}  // namespace

crypto::Digest expected_m3(const GoldenSet& g) {
  return boot::compute_chain(need(g.fsbl, "FSBL"), need(g.ssbl, "SSBL"), need(g.manifest, "manifest"),
                             need(g.firmware, "firmware"))
      .m3;
}

crypto::Digest expected_pre(const GoldenSet& g, const Challenge& chal) {
  if (g.transcript.empty()) throw Error(ErrorCode::kMissingGolden, "golden set lacks the input transcript");
  firmware::FirmwareImage fw = firmware::parse_firmware(need(g.firmware, "firmware"));
  return firmware::pre_exec_att(need(g.keys, "keys").attestation_key(), fw, expected_m3(g), chal,
                                g.transcript.front(), golden_ssa(g));
}

crypto::Digest expected_post(const GoldenSet& g, const Challenge& chal, ByteView output) {
  firmware::FirmwareImage fw = firmware::parse_firmware(need(g.firmware, "firmware"));
  return firmware::post_exec_att(need(g.keys, "keys").attestation_key(), fw, expected_m3(g), chal, g.transcript,
                                 output, golden_ssa(g), expected_pre(g, chal));
}

Verdict Verifier::verify_pre(const Report& report, const GoldenSet& golden) {
  ledger_.consume(report.chal);
  if (report.m3 != expected_m3(golden)) return {false, "m3 does not match the golden boot chain"};
  if (report.pre != expected_pre(golden, report.chal)) return {false, "PreExecAtt mismatch"};
  return {true, ""};
}

Verdict Verifier::verify_post(const Report& report, const GoldenSet& golden, ByteView claimed_output) {
  ledger_.consume(report.chal);
  if (!report.post) return {false, "report carries no PostExecAtt"};
  if (report.m3 != expected_m3(golden)) return {false, "m3 does not match the golden boot chain"};
  if (report.pre != expected_pre(golden, report.chal)) return {false, "PreExecAtt mismatch"};
  if (*report.post != expected_post(golden, report.chal, claimed_output)) return {false, "PostExecAtt mismatch"};
  return {true, ""};
}

}  // namespace fpgatee::verifier
