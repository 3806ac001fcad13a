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

// fpgatee: toolchain and simulator driver.
//
// Exit codes: 0 ok, 1 usage, 2 parse, 3 validation, 4 io, 5 crypto,
// 6 firmware error, 7 verification reject.

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fpgatee/boot/boot.hpp"
#include "fpgatee/crypto/keystore.hpp"
#include "fpgatee/device.hpp"
#include "fpgatee/firmware/image.hpp"
#include "fpgatee/hw/description.hpp"
#include "fpgatee/hw/plan.hpp"
#include "fpgatee/hw/synthesis.hpp"
#include "fpgatee/io.hpp"
#include "fpgatee/ssa/assembler.hpp"
#include "fpgatee/ssa/protected.hpp"
#include "fpgatee/toolchain.hpp"
#include "fpgatee/verifier/verifier.hpp"

namespace fs = std::filesystem;
using namespace fpgatee;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kValidate = 3,
  kIoError = 4,
  kCrypto = 5,
  kFirmware = 6,
  kReject = 7,
};

struct Failure {
  int code;
  std::string message;
};

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::kIo:
    case ErrorCode::kMissingGolden:
      return kIoError;
    case ErrorCode::kDuplicateName:
    case ErrorCode::kCapacityExceeded:
    case ErrorCode::kOverlappingSeb:
    case ErrorCode::kUnknownPrincipal:
    case ErrorCode::kSharedRegionConflict:
      return kValidate;
    case ErrorCode::kAuthFailure:
    case ErrorCode::kBadKey:
    case ErrorCode::kUnknownDeveloper:
    case ErrorCode::kBadPadding:
      return kCrypto;
    case ErrorCode::kReplayDetected:
      return kReject;
    case ErrorCode::kStaleSession:
    case ErrorCode::kVmFault:
    case ErrorCode::kInvalidState:
    case ErrorCode::kAccessDenied:
      return kFirmware;
    default:
      return kParse;
  }
}

// Runs `fn`, turning library errors into a Failure with `code`.
template <typename F>
auto with_exit(int code, const std::string& what, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Failure{code, what + ": " + e.what()};
  }
}

Bytes read_input_file(const std::string& path) {
  return with_exit(kIoError, "reading " + path, [&] { return read_file(path); });
}

void write_output_file(const std::string& path, ByteView data) {
  with_exit(kIoError, "writing " + path, [&] { write_file(path, data); });
}

crypto::KeyStore load_keys(const std::string& path) {
  if (path.empty()) throw Failure{kCrypto, "no key file: pass -k or set BYOTEE_KEYFILE"};
  return with_exit(kCrypto, "key file " + path, [&] { return crypto::KeyStore::load(path); });
}

// Options shared by the simulator commands.
struct UaOptions {
  std::string device;
  std::string keys;
  std::string ssa;
  std::string enclave;
  std::vector<std::string> text;
  std::vector<std::string> hex;
  std::vector<std::uint32_t> u32;
  std::string file;
  std::size_t chunk = 0;
  bool poll = false;
  std::string format = "raw";
  std::string output;

  std::vector<Bytes> chunks() const {
    std::vector<Bytes> out;
    for (const auto& t : text) out.push_back(to_bytes(t));
    for (const auto& h : hex) {
      out.push_back(with_exit(kParse, "--input-hex", [&] { return from_hex(h); }));
    }
    for (std::uint32_t v : u32) {
      out.push_back({static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                     static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 24)});
    }
    if (!file.empty()) {
      for (auto& c : toolchain::split_input(read_input_file(file), chunk)) out.push_back(std::move(c));
    }
    return out;
  }
};

void add_ua_options(CLI::App* cmd, UaOptions& o, bool needs_input = true) {
  cmd->add_option("DEVICE_DIR", o.device, "Deployed device directory")->required();
  cmd->add_option("-k,--keys", o.keys, "Key file")->envname("BYOTEE_KEYFILE");
  cmd->add_option("--ssa", o.ssa, "SSA name under root/")->required();
  cmd->add_option("--enclave", o.enclave, "Enclave name (default: the first)");
  if (needs_input) {
    auto* t = cmd->add_option("--input", o.text, "Input chunk as text (repeatable)");
    auto* h = cmd->add_option("--input-hex", o.hex, "Input chunk as hex (repeatable)");
    auto* u = cmd->add_option("--input-u32", o.u32, "Input chunk as a little-endian u32 (repeatable)");
    auto* f = cmd->add_option("--input-file", o.file, "Input file");
    t->excludes(h, u, f);
    h->excludes(u, f);
    u->excludes(f);
    cmd->add_option("--chunk", o.chunk, "Split --input-file into chunks of this size")->needs(f);
  }
  cmd->add_flag("--poll", o.poll, "Signal NewData through the SEB poll word");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"raw", "hex", "u32"}));
  cmd->add_option("-o,--output", o.output, "Write the output bytes to a file instead");
}

// A booted simulator plus the pieces every UA command needs.
struct Session {
  crypto::KeyStore keys;
  crypto::SystemRandom rng;
  toolchain::DeviceLayout layout;
  std::unique_ptr<Device> device;
  std::size_t enclave = 0;
  Bytes pssa;
  boot::BootResult boot;

  explicit Session(const UaOptions& o) : keys(load_keys(o.keys)), layout{o.device} {
    DeviceOptions opts;
    opts.firmware.poll_new_data = o.poll;
    device = std::make_unique<Device>(keys, rng, opts);
    Bytes image = read_input_file(layout.boot_image().string());
    boot = device->boot(image);
    if (!o.enclave.empty()) {
      enclave = with_exit(kUsage, "--enclave", [&] { return device->enclave_index(o.enclave); });
    }
    pssa = read_input_file(layout.ssa(o.ssa).string());
  }
};

void print_output(const UaOptions& o, ByteView out) {
  if (!o.output.empty()) {
    write_output_file(o.output, out);
    return;
  }
  if (o.format == "hex") {
    std::cout << to_hex(out) << '\n';
  } else if (o.format == "u32") {
    if (out.size() % 4 != 0) throw Failure{kFirmware, "output is not a whole number of u32 words"};
    for (std::size_t i = 0; i < out.size(); i += 4) {
      std::uint32_t v = out[i] | out[i + 1] << 8 | out[i + 2] << 16 | static_cast<std::uint32_t>(out[i + 3]) << 24;
      std::cout << v << '\n';
    }
  } else {
    std::cout.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (isatty(STDOUT_FILENO)) std::cout << '\n';
  }
  std::cout.flush();
}

void require_done(const RunOutcome& out, Device& device, std::size_t enclave) {
  if (out.status == hw::SebStatus::kDone) return;
  std::string why = out.error() ? std::string(error_code_name(*out.error())) : "unknown";
  std::string detail = device.firmware(enclave).last_error_message();
  throw Failure{kFirmware, "enclave reported ERROR (" + why + ")" + (detail.empty() ? "" : ": " + detail)};
}

firmware::Mode parse_mode(const std::string& m) {
  if (m == "pre") return firmware::Mode::kPreAtt;
  if (m == "post") return firmware::Mode::kPostAtt;
  return firmware::Mode::kPlain;
}

// argv[i] == "-bf" is the historical spelling of --bf.
std::vector<std::string> normalize_args(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) {
    std::string a = argv[i];
    if (a == "-bf") a = "--bf";
    if (a.rfind("-bf=", 0) == 0) a = "-" + a;
    args.push_back(a);
  }
  return args;  // CLI11 wants them reversed
}

int run(int argc, char** argv) {
  CLI::App app{"FPGA enclave toolchain and board simulator", "fpgatee"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // keygen
  std::string keygen_out;
  std::vector<std::string> developers{"dev-1"};
  auto* keygen = app.add_subcommand("keygen", "Generate a device key and developer keys");
  keygen->add_option("-o", keygen_out, "Key file to write")->required();
  keygen->add_option("--developer", developers, "Developer id (repeatable)")->capture_default_str();

  // hwbuild
  std::string hw_in, hw_out, hw_plan, hw_platform = "desk";
  bool hw_lenient = false;
  auto* hwbuild = app.add_subcommand("hwbuild", "Hardware description -> synthesis script");
  hwbuild->alias("hardwareBuilder");
  hwbuild->alias("hardwareBuilder.py");
  hwbuild->add_option("-d", hw_in, "CONFIG_JSON")->required();
  hwbuild->add_option("-o", hw_out, "TCL output")->required();
  hwbuild->add_option("--plan", hw_plan, "Also write the validated plan as JSON");
  hwbuild->add_option("--platform", hw_platform, "Platform limits")
      ->check(CLI::IsMember({"desk", "zynq7000"}))
      ->capture_default_str();
  hwbuild->add_flag("--lenient", hw_lenient, "Keep unknown keys instead of rejecting them");

  // fpgaimage
  std::string fi_tcl, fi_name, fi_flag, fi_out, fi_keys, fi_firmware, fi_fw_version = "1.0";
  auto* fpgaimage = app.add_subcommand("fpgaimage", "Synthesis script (+ firmware) -> FPGA image");
  fpgaimage->alias("createFPGAImage");
  fpgaimage->add_option("-d", fi_tcl, "TCL script")->required();
  fpgaimage->add_option("-n", fi_name, "Project name")->required();
  fpgaimage->add_option("--bf", fi_flag, "Build flag: cb (complete build) or gb (generate bitstream)")
      ->required()
      ->check(CLI::IsMember({"cb", "gb"}));
  fpgaimage->add_option("-o", fi_out, "FPGA_IMAGE output")->required();
  fpgaimage->add_option("-k,--keys", fi_keys, "Key file")->envname("BYOTEE_KEYFILE");
  fpgaimage->add_option("--firmware", fi_firmware, "Firmware image (default: the reference firmware)");
  fpgaimage->add_option("--fw-version", fi_fw_version, "Reference firmware version")->capture_default_str();

  // bootimage
  std::string bi_bif, bi_fpga, bi_out;
  auto* bootimage = app.add_subcommand("bootimage", "SYSTEM_BIF + FPGA image -> boot image");
  bootimage->alias("createBootImage");
  bootimage->add_option("SYSTEM_BIF", bi_bif)->required();
  bootimage->add_option("FPGA_IMAGE", bi_fpga)->required();
  bootimage->add_option("-o", bi_out, "Boot image output")->required();

  // assemble
  std::string as_in, as_out;
  auto* assemble = app.add_subcommand("assemble", "SSA assembly -> SSA image");
  assemble->add_option("SOURCE", as_in)->required();
  assemble->add_option("-o", as_out, "SSA_BIN output")->required();

  // ssapack
  std::string sp_in, sp_out, sp_keys, sp_dev;
  auto* ssapack = app.add_subcommand("ssapack", "SSA image -> protected SSA");
  ssapack->alias("SSAPACKER");
  ssapack->add_option("-d", sp_in, "SSA_BIN")->required();
  ssapack->add_option("-o", sp_out, "PROTECTED_SSA output")->required();
  ssapack->add_option("-k,--keys", sp_keys, "Key file")->envname("BYOTEE_KEYFILE");
  ssapack->add_option("--developer", sp_dev, "Developer id (default: from the image)");

  // deploy
  std::string dp_dir, dp_boot;
  std::vector<std::string> dp_ssas;
  auto* deploy = app.add_subcommand("deploy", "Copy artifacts into a device directory (boot/ and root/)");
  deploy->alias("deploySoC");
  deploy->add_option("SD_DEVICE", dp_dir)->required();
  deploy->add_option("BYOTEE_BIN", dp_boot)->required();
  deploy->add_option("PROTECTED_SSA", dp_ssas);

  // run
  UaOptions run_o;
  std::string run_mode = "plain", run_report, run_chal;
  auto* runc = app.add_subcommand("run", "Boot the simulator and run an SSA");
  add_ua_options(runc, run_o);
  runc->add_option("--mode", run_mode)->check(CLI::IsMember({"plain", "pre", "post"}))->capture_default_str();
  runc->add_option("--report", run_report, "Write the attestation report here");
  runc->add_option("--chal", run_chal, "Challenge as 128 hex digits (default: random)");

  // attest
  UaOptions at_o;
  std::string at_golden, at_mode = "post", at_report;
  auto* attest = app.add_subcommand("attest", "Run with attestation and verify against a golden directory");
  add_ua_options(attest, at_o);
  attest->add_option("--golden", at_golden, "Golden directory (deploy layout)")->required();
  attest->add_option("--mode", at_mode)->check(CLI::IsMember({"pre", "post"}))->capture_default_str();
  attest->add_option("--report", at_report, "Write the report here");

  // suspend
  UaOptions su_o;
  std::uint64_t su_at = 1;
  std::string su_session, su_mode = "plain";
  auto* suspend = app.add_subcommand("suspend", "Run an SSA and export its session at a yield");
  add_ua_options(suspend, su_o);
  suspend->add_option("--at-yield", su_at, "Yield number (1-based)")->required()->check(CLI::PositiveNumber);
  suspend->add_option("--session-out", su_session, "Session blob output")->required();
  suspend->add_option("--mode", su_mode)->check(CLI::IsMember({"plain", "pre", "post"}))->capture_default_str();

  // resume
  UaOptions re_o;
  std::string re_session, re_session_out, re_report;
  std::optional<std::uint64_t> re_at;
  auto* resume = app.add_subcommand("resume", "Re-execute an exported session");
  add_ua_options(resume, re_o);
  resume->add_option("--session", re_session, "Session blob")->required();
  auto* re_at_opt = resume->add_option("--at-yield", re_at, "Suspend again at this yield");
  resume->add_option("--session-out", re_session_out, "Where a new session blob goes")->needs(re_at_opt);
  re_at_opt->needs(resume->get_option("--session-out"));
  resume->add_option("--report", re_report, "Write the attestation report here");

  std::vector<std::string> args = normalize_args(argc, argv);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*keygen) {
    crypto::SystemRandom rng;
    crypto::KeyStore ks = crypto::KeyStore::generate(rng, developers);
    with_exit(kIoError, "writing " + keygen_out, [&] { ks.save(keygen_out); });
    std::cerr << "wrote " << keygen_out << " (device key, " << developers.size() << " developer key(s))\n";
    return kOk;
  }

  if (*hwbuild) {
    std::string text = with_exit(kIoError, "reading " + hw_in, [&] { return to_string(read_file(hw_in)); });
    hw::HardwareDescription desc = with_exit(kParse, hw_in, [&] {
      try {
        return hw::parse_description(text, hw_lenient ? hw::ParseMode::kLenient : hw::ParseMode::kStrict);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kDuplicateName) throw Failure{kValidate, hw_in + ": " + e.what()};
        throw;
      }
    });
    hw::PlatformLimits limits = hw_platform == "zynq7000" ? hw::PlatformLimits::zynq7000() : hw::PlatformLimits::desk();
    hw::ValidatedPlan plan = with_exit(kValidate, hw_in, [&] { return hw::validate(desc, limits); });
    write_output_file(hw_out, as_bytes(hw::emit_script(plan).text()));
    for (const auto& clash : hw::seb_overlaps(plan.description)) {
      std::cerr << "warning: " << clash << "; the simulator will refuse to boot this plan\n";
    }
    if (!hw_plan.empty()) write_output_file(hw_plan, as_bytes(hw::serialize_plan(plan)));
    std::cerr << "wrote " << hw_out << " (" << plan.description.enclaves.size() << " enclaves)\n";
    return kOk;
  }

  if (*fpgaimage) {
    std::string tcl = to_string(read_input_file(fi_tcl));
    Bytes manifest = with_exit(kParse, fi_tcl, [&] { return toolchain::manifest_from_script(tcl); });
    if (fi_flag == "gb") {
      write_output_file(fi_out, manifest);
      std::cerr << fi_name << ": wrote bitstream manifest " << fi_out << '\n';
      return kOk;
    }
    crypto::KeyStore keys = load_keys(fi_keys);
    Bytes fw = fi_firmware.empty() ? firmware::serialize_firmware(firmware::reference_firmware(fi_fw_version))
                                   : read_input_file(fi_firmware);
    with_exit(kParse, "firmware", [&] { return firmware::parse_firmware(fw); });
    crypto::SystemRandom rng;
    write_output_file(fi_out, boot::seal_fpga_image({manifest, fw}, keys.device_key(), rng));
    std::cerr << fi_name << ": wrote FPGA image " << fi_out << '\n';
    return kOk;
  }

  if (*bootimage) {
    std::string bif = to_string(read_input_file(bi_bif));
    toolchain::BifEntries entries =
        with_exit(kParse, bi_bif, [&] { return toolchain::parse_bif(bif, fs::path(bi_bif).parent_path()); });
    boot::BootImage image;
    image.fsbl = read_input_file(entries.fsbl.string());
    image.ssbl = read_input_file(entries.ssbl.string());
    image.fpga_image = read_input_file(bi_fpga);
    with_exit(kIoError, bi_fpga + " is truncated or not an FPGA image",
              [&] { boot::check_fpga_image_framing(image.fpga_image); });
    write_output_file(bi_out, image.serialize());
    std::cerr << "wrote " << bi_out << '\n';
    return kOk;
  }

  if (*assemble) {
    std::string src = to_string(read_input_file(as_in));
    ssa::SsaImage image = with_exit(kParse, as_in, [&] { return ssa::assemble(src); });
    write_output_file(as_out, ssa::image_file(image));
    std::cerr << "wrote " << as_out << " (" << image.metadata.name << ", " << image.section_bytes() << " bytes)\n";
    return kOk;
  }

  if (*ssapack) {
    Bytes file = read_input_file(sp_in);
    ssa::SsaImage image = with_exit(kParse, sp_in, [&] { return ssa::parse_image_file(file); });
    crypto::KeyStore keys = load_keys(sp_keys);
    std::string dev = sp_dev.empty() ? image.metadata.developer_id : sp_dev;
    crypto::SystemRandom rng;
    Bytes blob = with_exit(kCrypto, "packing", [&] { return ssa::pack(image, keys, dev, rng); });
    write_output_file(sp_out, blob);
    std::cerr << "wrote " << sp_out << " for developer " << dev << '\n';
    return kOk;
  }

  if (*deploy) {
    Bytes boot_image = read_input_file(dp_boot);
    std::vector<std::pair<std::string, Bytes>> ssas;
    for (const auto& p : dp_ssas) ssas.emplace_back(fs::path(p).stem().string(), read_input_file(p));
    toolchain::DeviceLayout layout =
        with_exit(kParse, "deploy", [&] { return toolchain::deploy(dp_dir, boot_image, ssas); });
    std::cout << layout.boot_image().string() << '\n';
    for (const auto& [name, blob] : ssas) std::cout << layout.ssa(name).string() << '\n';
    return kOk;
  }

  if (*runc) {
    Session s(run_o);
    RunRequest req;
    req.protected_ssa = s.pssa;
    req.input = run_o.chunks();
    req.mode = parse_mode(run_mode);
    req.poll_new_data = run_o.poll;
    if (run_chal.empty()) {
      s.rng.fill(req.chal);
    } else {
      Bytes c = with_exit(kParse, "--chal", [&] { return from_hex(run_chal); });
      if (c.size() != req.chal.size()) throw Failure{kParse, "--chal needs 64 bytes"};
      std::copy(c.begin(), c.end(), req.chal.begin());
    }
    RunOutcome out = with_exit(kFirmware, "run", [&] { return s.device->run(s.enclave, req); });
    require_done(out, *s.device, s.enclave);
    if (!run_report.empty()) {
      if (req.mode == firmware::Mode::kPlain) throw Failure{kUsage, "--report needs --mode pre or post"};
      write_output_file(run_report, out.report.serialize());
    }
    print_output(run_o, out.output);
    return kOk;
  }

  if (*attest) {
    Session s(at_o);
    verifier::Verifier verifier;
    verifier::GoldenSet golden = with_exit(kIoError, "golden", [&] {
      return toolchain::load_golden(toolchain::DeviceLayout{at_golden}, at_o.ssa, s.keys);
    });
    RunRequest req;
    req.protected_ssa = s.pssa;
    req.input = at_o.chunks();
    req.mode = parse_mode(at_mode);
    req.poll_new_data = at_o.poll;
    req.chal = verifier.issue_challenge(s.rng);
    golden.transcript = req.input.empty() ? std::vector<Bytes>{Bytes{}} : req.input;
    RunOutcome out = with_exit(kFirmware, "run", [&] { return s.device->run(s.enclave, req); });
    if (out.status != hw::SebStatus::kDone) {
      std::cout << "REJECT: enclave reported ERROR ("
                << (out.error() ? error_code_name(*out.error()) : std::string_view("unknown")) << ")\n";
      return kReject;
    }
    if (!at_report.empty()) write_output_file(at_report, out.report.serialize());
    verifier::Verdict v = with_exit(kReject, "verify", [&] {
      return req.mode == firmware::Mode::kPostAtt ? verifier.verify_post(out.report, golden, out.output)
                                                  : verifier.verify_pre(out.report, golden);
    });
    if (!v.accept) {
      std::cout << "REJECT: " << v.reason << '\n';
      return kReject;
    }
    std::cout << "ACCEPT\n";
    if (!at_o.output.empty()) write_output_file(at_o.output, out.output);
    return kOk;
  }

  if (*suspend) {
    Session s(su_o);
    RunRequest req;
    req.protected_ssa = s.pssa;
    req.input = su_o.chunks();
    req.mode = parse_mode(su_mode);
    req.poll_new_data = su_o.poll;
    s.rng.fill(req.chal);
    req.suspend_at_yield = su_at;
    RunOutcome out = with_exit(kFirmware, "run", [&] { return s.device->run(s.enclave, req); });
    require_done(out, *s.device, s.enclave);
    if (!out.suspended()) {
      std::cerr << "SSA finished before yield " << su_at << "; no session written\n";
      print_output(su_o, out.output);
      return kOk;
    }
    write_output_file(su_session, out.output);
    std::cerr << "suspended at yield " << s.device->firmware(s.enclave).yields() << ", session in " << su_session
              << '\n';
    return kOk;
  }

  if (*resume) {
    Session s(re_o);
    Bytes blob = read_input_file(re_session);
    RunOutcome out = with_exit(kFirmware, "resume", [&] {
      return s.device->resume(s.enclave, s.pssa, blob, re_o.chunks(), re_o.poll, re_at);
    });
    require_done(out, *s.device, s.enclave);
    if (out.suspended()) {
      write_output_file(re_session_out, out.output);
      std::cerr << "suspended at yield " << s.device->firmware(s.enclave).yields() << ", session in "
                << re_session_out << '\n';
      return kOk;
    }
    if (!re_report.empty() && (out.fw_flags & hw::kFwReportPre)) write_output_file(re_report, out.report.serialize());
    print_output(re_o, out.output);
    return kOk;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Failure& f) {
    std::cerr << "fpgatee: " << f.message << '\n';
    return f.code;
  } catch (const Error& e) {
    std::cerr << "fpgatee: " << e.what() << '\n';
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "fpgatee: " << e.what() << '\n';
    return kIoError;
  }
}
