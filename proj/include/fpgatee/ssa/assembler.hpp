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

#include <string_view>

#include "fpgatee/ssa/image.hpp"
#include "fpgatee/vm/vm.hpp"

namespace fpgatee::ssa {

// Assembles the one-instruction-per-line SSA text format into an image
// position-fixed at `load_base`. Directives:
//   .name "x"  .version N  .developer "id"  .entry label
//   .text  .rodata  .data  .bss
//   .byte a, b  .word a, b  .ascii "s"  .space N
// Comments start with ';' or '#'. Throws MalformedInput with the line number.
SsaImage assemble(std::string_view source, std::uint32_t load_base = vm::kDefaultLoadBase);

}  // namespace fpgatee::ssa
