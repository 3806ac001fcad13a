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

#include "fpgatee/toolchain.hpp"

#include <algorithm>
#include <sstream>

#include "fpgatee/boot/boot.hpp"
#include "fpgatee/error.hpp"
#include "fpgatee/hw/synthesis.hpp"
#include "fpgatee/io.hpp"
#include "fpgatee/ssa/protected.hpp"

namespace fpgatee::toolchain {

namespace fs = std::filesystem;

namespace {

std::string strip_comment(std::string line) {
  for (std::string_view marker : {"//", "#"}) {
    auto at = line.find(marker);
    if (at != std::string::npos) line.erase(at);
  }
  return line;
}

}  // namespace

BifEntries parse_bif(std::string_view text, const fs::path& base_dir) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool open = false, closed = false;
  std::vector<std::pair<std::string, bool>> entries;  // path, is bootloader
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream words(strip_comment(line));
    std::string word;
    bool bootloader = false;
    while (words >> word) {
      auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::kMalformedInput, "BIF line " + std::to_string(lineno) + ": " + what);
      };
      if (closed) fail("text after '}'");
      if (!open) {
        if (word.back() == ':' && entries.empty()) continue;  // image label
        if (word != "{") fail("expected '{'");
        open = true;
        continue;
      }
      if (word == "}") {
        if (bootloader) fail("[bootloader] without a file");
        closed = true;
        continue;
      }
      if (word.front() == '[') {
        if (word != "[bootloader]") fail("unsupported attribute " + word);
        bootloader = true;
        continue;
      }
      entries.emplace_back(word, bootloader);
      bootloader = false;
    }
    if (bootloader) throw Error(ErrorCode::kMalformedInput, "BIF line " + std::to_string(lineno) + ": [bootloader] without a file");
  }
  if (!closed) throw Error(ErrorCode::kMalformedInput, "BIF has no closed { } block");

  BifEntries out;
  int loaders = 0, others = 0;
  for (const auto& [path, is_loader] : entries) {
    fs::path p = fs::path(path).is_absolute() ? fs::path(path) : base_dir / path;
    if (is_loader) {
      out.fsbl = p;
      ++loaders;
    } else {
      out.ssbl = p;
      ++others;
    }
  }
  if (loaders != 1 || others != 1) {
    throw Error(ErrorCode::kMalformedInput, "BIF must name one [bootloader] and one second-stage loader");
  }
  return out;
}

Bytes manifest_from_script(std::string_view script_text) {
  return hw::build_manifest(hw::plan_from_script(script_text));
}

fs::path DeviceLayout::ssa(std::string_view name) const {
  return dir / "root" / (std::string(name) + std::string(kSsaExtension));
}

std::vector<std::string> DeviceLayout::ssa_names() const {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir / "root", ec)) {
    if (entry.path().extension() == kSsaExtension) names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

DeviceLayout deploy(const fs::path& dir, ByteView boot_image, const std::vector<std::pair<std::string, Bytes>>& ssas) {
  boot::BootImage parsed = boot::BootImage::parse(boot_image);
  boot::check_fpga_image_framing(parsed.fpga_image);
  for (const auto& [name, blob] : ssas) {
    if (name.empty() || name.find('/') != std::string::npos) {
      throw Error(ErrorCode::kMalformedInput, "bad SSA name '" + name + "'");
    }
    ssa::parse_protected_header(blob);
  }
  DeviceLayout layout{dir};
  std::error_code ec;
  fs::create_directories(dir / "boot", ec);
  if (!ec) fs::create_directories(dir / "root", ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  write_file(layout.boot_image(), boot_image);
  for (const auto& [name, blob] : ssas) write_file(layout.ssa(name), blob);
  return layout;
}

verifier::GoldenSet load_golden(const DeviceLayout& golden, std::string_view ssa, const crypto::KeyStore& keys) {
  auto need = [](const fs::path& p) {
    if (!fs::exists(p)) throw Error(ErrorCode::kMissingGolden, "golden file " + p.string() + " is missing");
    return read_file(p);
  };
  verifier::GoldenSet g = verifier::GoldenSet::from_boot_image(need(golden.boot_image()), keys);
  g.protected_ssa = need(golden.ssa(ssa));
  return g;
}

std::vector<Bytes> split_input(ByteView data, std::size_t chunk) {
  if (chunk == 0 || data.size() <= chunk) return {Bytes(data.begin(), data.end())};
  std::vector<Bytes> out;
  for (std::size_t off = 0; off < data.size(); off += chunk) {
    ByteView part = data.subspan(off, std::min(chunk, data.size() - off));
    out.emplace_back(part.begin(), part.end());
  }
  return out;
}

}  // namespace fpgatee::toolchain
