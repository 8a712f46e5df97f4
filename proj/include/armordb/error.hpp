// Copyright 2026 The armordb Authors
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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace armordb {

/// Wire-visible error codes. The numeric values are part of the protocol.
enum class ErrorCode : std::uint16_t {
  kOk = 0,
  kMalformedRequest = 100,
  kUnknownCommand = 101,
  kBadArity = 102,
  kReservedName = 103,
  kUnknownReference = 200,
  kReferenceBusy = 201,
  kNotLeaseHolder = 202,
  kDuplicateReference = 203,
  kUnknownEntity = 204,
  kInconsistentOntology = 205,
  kOntologyParseError = 300,
  kFileIOError = 301,
  kUnsupportedExpression = 302,
  kUnknownProcedure = 400,
  kProcedureFailed = 401,
  kInternalError = 500,
};

struct ErrorInfo {
  ErrorCode code;
  std::string_view name;
};

/// The closed registry, ordered by code.
std::span<const ErrorInfo> error_registry();

std::string_view error_name(ErrorCode code);

/// True iff `value` is a registered code.
bool is_registered_code(int value);

/// Every failure in the library is reported as an Error carrying its
/// wire code; the dispatcher turns these into error responses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace armordb
