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

#include "fpgatee/ssa/assembler.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fpgatee::ssa {
namespace {

using vm::Instruction;
using vm::Opcode;

enum Section { kText, kRodata, kData, kBss, kSectionCount };

struct Line {
  int number = 0;
  Section section = kText;
  std::uint32_t offset = 0;  // within section
  std::string op;
  std::vector<std::string> args;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorCode::kMalformedInput, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits on commas outside string literals and strips a trailing comment.
std::vector<std::string> split_args(std::string_view s, int line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (in_string) {
      cur += ch;
      if (ch == '\\' && i + 1 < s.size()) {
        cur += s[++i];
      } else if (ch == '"') {
        in_string = false;
      }
      continue;
    }
    if (ch == ';' || ch == '#') break;
    if (ch == '"') in_string = true;
    if (ch == ',') {
      out.emplace_back(trim(cur));
      cur.clear();
      continue;
    }
    cur += ch;
  }
  if (in_string) fail(line, "unterminated string");
  if (!trim(cur).empty() || !out.empty()) out.emplace_back(trim(cur));
  return out;
}

std::string parse_string(const std::string& arg, int line) {
  if (arg.size() < 2 || arg.front() != '"' || arg.back() != '"') fail(line, "expected a string literal");
  std::string out;
  for (std::size_t i = 1; i + 1 < arg.size(); ++i) {
    char ch = arg[i];
    if (ch != '\\') {
      out += ch;
      continue;
    }
    if (++i >= arg.size() - 1) fail(line, "dangling escape");
    switch (arg[i]) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case '0': out += '\0'; break;
      case '\\': out += '\\'; break;
      case '"': out += '"'; break;
      default: fail(line, "unknown escape");
    }
  }
  return out;
}

std::optional<std::uint64_t> parse_number(std::string_view s) {
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  int base = 10;
  if (s.starts_with("0x") || s.starts_with("0X")) {
    base = 16;
    s.remove_prefix(2);
  }
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc() || p != s.data() + s.size() || v > 0xffffffffu) return std::nullopt;
  return negative ? static_cast<std::uint32_t>(-static_cast<std::int64_t>(v)) : v;
}

class Assembler {
 public:
  Assembler(std::string_view source, std::uint32_t load_base) : load_base_(load_base) { scan(source); }

  SsaImage build() {
    image_.text.reserve(sizes_[kText]);
    image_.bss_size = sizes_[kBss];
    SsaImage shape;
    shape.text.resize(sizes_[kText]);
    shape.rodata.resize(sizes_[kRodata]);
    shape.data.resize(sizes_[kData]);
    shape.bss_size = sizes_[kBss];
    vm::MemoryLayout l = vm::MemoryLayout::for_image(shape, load_base_);
    bases_ = {l.text_base, l.rodata_base, l.data_base, l.bss_base};
    for (const Line& line : lines_) emit(line);
    if (entry_label_) {
      std::uint32_t addr = resolve(*entry_label_, entry_line_);
      if (addr < l.text_base || addr >= l.text_end) fail(entry_line_, "entry must be a text label");
      image_.entry_offset = addr - l.text_base;
    }
    if (image_.text.empty()) fail(0, "no instructions");
    if (image_.metadata.developer_id.empty()) fail(0, "missing .developer");
    check_image(image_);
    return std::move(image_);
  }

 private:
  void scan(std::string_view source) {
    int number = 0;
    Section section = kText;
    while (!source.empty()) {
      ++number;
      std::size_t nl = source.find('\n');
      std::string_view raw = source.substr(0, nl);
      source.remove_prefix(nl == std::string_view::npos ? source.size() : nl + 1);
      std::string_view s = trim(raw);
      // Labels, possibly several, possibly followed by a statement.
      while (true) {
        std::size_t colon = s.find(':');
        std::size_t quote = s.find('"');
        std::size_t comment = s.find_first_of(";#");
        if (colon == std::string_view::npos || (quote != std::string_view::npos && quote < colon) ||
            (comment != std::string_view::npos && comment < colon)) {
          break;
        }
        std::string label(trim(s.substr(0, colon)));
        if (label.empty() || label.find_first_of(" \t,") != std::string::npos) fail(number, "bad label");
        if (!labels_.emplace(label, std::pair{section, sizes_[section]}).second) {
          fail(number, "duplicate label '" + label + "'");
        }
        s = trim(s.substr(colon + 1));
      }
      if (s.empty() || s.front() == ';' || s.front() == '#') continue;
      std::size_t sp = s.find_first_of(" \t");
      Line line;
      line.number = number;
      line.op = std::string(s.substr(0, sp));
      if (sp != std::string_view::npos) line.args = split_args(trim(s.substr(sp)), number);

      if (line.op == ".text" || line.op == ".rodata" || line.op == ".data" || line.op == ".bss") {
        section = line.op == ".text" ? kText : line.op == ".rodata" ? kRodata : line.op == ".data" ? kData : kBss;
        continue;
      }
      if (line.op == ".name" || line.op == ".developer") {
        if (line.args.size() != 1) fail(number, line.op + " takes one string");
        (line.op == ".name" ? image_.metadata.name : image_.metadata.developer_id) =
            parse_string(line.args[0], number);
        continue;
      }
      if (line.op == ".version") {
        auto v = line.args.size() == 1 ? parse_number(line.args[0]) : std::nullopt;
        if (!v) fail(number, ".version takes a number");
        image_.metadata.version = static_cast<std::uint32_t>(*v);
        continue;
      }
      if (line.op == ".entry") {
        if (line.args.size() != 1) fail(number, ".entry takes a label");
        entry_label_ = line.args[0];
        entry_line_ = number;
        continue;
      }
      line.section = section;
      line.offset = sizes_[section];
      sizes_[section] += size_of(line, section);
      lines_.push_back(std::move(line));
    }
  }

  std::uint32_t size_of(const Line& line, Section section) {
    if (line.op.front() != '.') {
      if (section != kText) fail(line.number, "instruction outside .text");
      return vm::kInstructionSize;
    }
    if (section == kText) fail(line.number, "data directive inside .text");
    if (line.op == ".space") {
      auto v = line.args.size() == 1 ? parse_number(line.args[0]) : std::nullopt;
      if (!v) fail(line.number, ".space takes a size");
      return static_cast<std::uint32_t>(*v);
    }
    if (section == kBss) fail(line.number, "only .space is allowed in .bss");
    if (line.op == ".byte") return static_cast<std::uint32_t>(line.args.size());
    if (line.op == ".word") return static_cast<std::uint32_t>(line.args.size() * 4);
    if (line.op == ".ascii") {
      if (line.args.size() != 1) fail(line.number, ".ascii takes one string");
      return static_cast<std::uint32_t>(parse_string(line.args[0], line.number).size());
    }
    fail(line.number, "unknown directive " + line.op);
  }

  std::uint32_t resolve(const std::string& arg, int line) {
    if (auto v = parse_number(arg)) return static_cast<std::uint32_t>(*v);
    std::string name = arg;
    std::uint32_t addend = 0;
    if (std::size_t plus = arg.find('+'); plus != std::string::npos) {
      name = std::string(trim(std::string_view(arg).substr(0, plus)));
      auto v = parse_number(trim(std::string_view(arg).substr(plus + 1)));
      if (!v) fail(line, "bad offset in '" + arg + "'");
      addend = static_cast<std::uint32_t>(*v);
    }
    auto it = labels_.find(name);
    if (it == labels_.end()) fail(line, "unknown symbol '" + name + "'");
    return bases_[it->second.first] + it->second.second + addend;
  }

  std::uint8_t reg(const std::string& arg, int line) {
    if (arg == "sp") return vm::kSp;
    if (arg == "lr") return vm::kLr;
    if (arg.size() >= 2 && arg[0] == 'r') {
      auto v = parse_number(std::string_view(arg).substr(1));
      if (v && *v < vm::kRegisterCount && arg[1] != '-') return static_cast<std::uint8_t>(*v);
    }
    fail(line, "expected a register, got '" + arg + "'");
  }

  bool is_reg(const std::string& arg) {
    if (arg == "sp" || arg == "lr") return true;
    if (arg.size() < 2 || arg[0] != 'r') return false;
    auto v = parse_number(std::string_view(arg).substr(1));
    return v && *v < vm::kRegisterCount;
  }

  void expect_args(const Line& line, std::size_t n) {
    if (line.args.size() != n) {
      fail(line.number, line.op + " takes " + std::to_string(n) + " operand(s)");
    }
  }

  void emit(const Line& line) {
    if (line.section != kText) {
      emit_data(line);
      return;
    }
    std::string op = line.op;
    std::uint8_t width = 4;
    if (std::size_t dot = op.find('.'); dot != std::string::npos) {
      std::string suffix = op.substr(dot + 1);
      op = op.substr(0, dot);
      if (op != "load" && op != "store") fail(line.number, "width suffix on " + op);
      if (suffix == "b") width = 1;
      else if (suffix == "h") width = 2;
      else if (suffix == "w") width = 4;
      else fail(line.number, "unknown width ." + suffix);
    }
    std::optional<Opcode> opcode = vm::opcode_for(op);
    if (!opcode) fail(line.number, "unknown mnemonic '" + line.op + "'");
    Instruction in;
    in.op = *opcode;
    const auto& a = line.args;
    switch (in.op) {
      case Opcode::kLoadi:
        expect_args(line, 2);
        in.a = reg(a[0], line.number);
        in.imm = resolve(a[1], line.number);
        break;
      case Opcode::kLoad:
      case Opcode::kStore:
        if (a.size() != 2 && a.size() != 3) fail(line.number, op + " takes 2 or 3 operands");
        in.a = reg(a[0], line.number);
        in.b = reg(a[1], line.number);
        in.c = width;
        in.imm = a.size() == 3 ? resolve(a[2], line.number) : 0;
        break;
      case Opcode::kMov:
        expect_args(line, 2);
        in.a = reg(a[0], line.number);
        in.b = reg(a[1], line.number);
        break;
      case Opcode::kAdd:
      case Opcode::kSub:
      case Opcode::kMul:
      case Opcode::kXor:
      case Opcode::kAnd:
      case Opcode::kOr:
      case Opcode::kShl:
      case Opcode::kShr:
      case Opcode::kCmp:
        expect_args(line, 3);
        in.a = reg(a[0], line.number);
        in.b = reg(a[1], line.number);
        if (is_reg(a[2])) {
          in.c = reg(a[2], line.number);
        } else {
          in.c = vm::kImmOperand;
          in.imm = resolve(a[2], line.number);
        }
        break;
      case Opcode::kJmp:
      case Opcode::kCall:
        expect_args(line, 1);
        in.imm = resolve(a[0], line.number);
        break;
      case Opcode::kJz:
      case Opcode::kJnz:
        expect_args(line, 2);
        in.a = reg(a[0], line.number);
        in.imm = resolve(a[1], line.number);
        break;
      case Opcode::kIn:
        expect_args(line, 3);
        in.a = reg(a[0], line.number);
        in.b = reg(a[1], line.number);
        in.c = reg(a[2], line.number);
        break;
      case Opcode::kOut:
        expect_args(line, 2);
        in.a = reg(a[0], line.number);
        in.b = reg(a[1], line.number);
        break;
      case Opcode::kRet:
      case Opcode::kYield:
      case Opcode::kHalt:
        expect_args(line, 0);
        break;
    }
    auto enc = in.encode();
    image_.text.insert(image_.text.end(), enc.begin(), enc.end());
  }

  void emit_data(const Line& line) {
    if (line.section == kBss) return;
    Bytes& out = line.section == kRodata ? image_.rodata : image_.data;
    if (line.op == ".space") {
      out.resize(out.size() + static_cast<std::size_t>(*parse_number(line.args[0])));
    } else if (line.op == ".byte") {
      for (const auto& arg : line.args) {
        std::uint32_t v = resolve(arg, line.number);
        if (v > 0xff && v < 0xffffff80u) fail(line.number, "byte value out of range");
        out.push_back(static_cast<std::uint8_t>(v));
      }
    } else if (line.op == ".word") {
      for (const auto& arg : line.args) {
        std::uint32_t v = resolve(arg, line.number);
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
      }
    } else if (line.op == ".ascii") {
      std::string s = parse_string(line.args[0], line.number);
      out.insert(out.end(), s.begin(), s.end());
    }
  }

  std::uint32_t load_base_;
  std::vector<Line> lines_;
  std::array<std::uint32_t, kSectionCount> sizes_{};
  std::array<std::uint32_t, kSectionCount> bases_{};
  std::map<std::string, std::pair<Section, std::uint32_t>> labels_;
  std::optional<std::string> entry_label_;
  int entry_line_ = 0;
  SsaImage image_;
};

}  // namespace

SsaImage assemble(std::string_view source, std::uint32_t load_base) {
  return Assembler(source, load_base).build();
}

}  // namespace fpgatee::ssa
