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

#include "fpgatee/error.hpp"

namespace fpgatee {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kUnknownField: return "UnknownField";
    case ErrorCode::kBadSize: return "BadSize";
    case ErrorCode::kDuplicateName: return "DuplicateName";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kOverlappingSeb: return "OverlappingSEB";
    case ErrorCode::kUnknownPrincipal: return "UnknownPrincipal";
    case ErrorCode::kSharedRegionConflict: return "SharedRegionConflict";
    case ErrorCode::kBadPadding: return "BadPadding";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnknownDeveloper: return "UnknownDeveloper";
    case ErrorCode::kAuthFailure: return "AuthFailure";
    case ErrorCode::kMalformedImage: return "MalformedImage";
    case ErrorCode::kAccessDenied: return "AccessDenied";
    case ErrorCode::kStaleSession: return "StaleSession";
    case ErrorCode::kReplayDetected: return "ReplayDetected";
    case ErrorCode::kMissingGolden: return "MissingGolden";
    case ErrorCode::kBadKey: return "BadKey";
    case ErrorCode::kInvalidState: return "InvalidState";
    case ErrorCode::kVmFault: return "VmFault";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace fpgatee
