// Copyright 2026 The netepi Authors
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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace netepi {

enum class ErrorCode {
  kUnknownVertex,
  kUnknownEdge,
  kDuplicateId,
  kDisconnectedGraph,
  kIsBridge,
  kSyntaxError,
  kUnknownProposition,
  kInvalidSignature,
  kTooManyAtoms,
  kDomainViolation,
  kStateSpaceTooLarge,
  kNoRunFound,
  kNotARun,
  kMalformedInstance,
  kTopologyMismatch,
  kInvalidProfile,
  kNoGammaPath,
  kInconsistentProfile,
  kInvalidInput,
  kCaseViolation,
  kNonPositiveScale,
  kFormatError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownVertex: return "UnknownVertex";
    case ErrorCode::kUnknownEdge: return "UnknownEdge";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kIsBridge: return "IsBridge";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownProposition: return "UnknownProposition";
    case ErrorCode::kInvalidSignature: return "InvalidSignature";
    case ErrorCode::kTooManyAtoms: return "TooManyAtoms";
    case ErrorCode::kDomainViolation: return "DomainViolation";
    case ErrorCode::kStateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::kNoRunFound: return "NoRunFound";
    case ErrorCode::kNotARun: return "NotARun";
    case ErrorCode::kMalformedInstance: return "MalformedInstance";
    case ErrorCode::kTopologyMismatch: return "TopologyMismatch";
    case ErrorCode::kInvalidProfile: return "InvalidProfile";
    case ErrorCode::kNoGammaPath: return "NoGammaPath";
    case ErrorCode::kInconsistentProfile: return "InconsistentProfile";
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kCaseViolation: return "CaseViolation";
    case ErrorCode::kNonPositiveScale: return "NonPositiveScale";
    case ErrorCode::kFormatError: return "FormatError";
  }
  return "Unknown";
}

// Every failure raised by the library. `position` is set for errors that
// point into concrete syntax (formula text, file contents).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::size_t>& position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace netepi
