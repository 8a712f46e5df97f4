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

#include "armordb/error.hpp"

#include <algorithm>
#include <array>

namespace armordb {

namespace {

constexpr std::array<ErrorInfo, 17> kRegistry{{
    {ErrorCode::kOk, "OK"},
    {ErrorCode::kMalformedRequest, "MalformedRequest"},
    {ErrorCode::kUnknownCommand, "UnknownCommand"},
    {ErrorCode::kBadArity, "BadArity"},
    {ErrorCode::kReservedName, "ReservedName"},
    {ErrorCode::kUnknownReference, "UnknownReference"},
    {ErrorCode::kReferenceBusy, "ReferenceBusy"},
    {ErrorCode::kNotLeaseHolder, "NotLeaseHolder"},
    {ErrorCode::kDuplicateReference, "DuplicateReference"},
    {ErrorCode::kUnknownEntity, "UnknownEntity"},
    {ErrorCode::kInconsistentOntology, "InconsistentOntology"},
    {ErrorCode::kOntologyParseError, "OntologyParseError"},
    {ErrorCode::kFileIOError, "FileIOError"},
    {ErrorCode::kUnsupportedExpression, "UnsupportedExpression"},
    {ErrorCode::kUnknownProcedure, "UnknownProcedure"},
    {ErrorCode::kProcedureFailed, "ProcedureFailed"},
    {ErrorCode::kInternalError, "InternalError"},
}};

}  // namespace

std::span<const ErrorInfo> error_registry() { return kRegistry; }

std::string_view error_name(ErrorCode code) {
  auto it = std::find_if(kRegistry.begin(), kRegistry.end(),
                         [code](const ErrorInfo& e) { return e.code == code; });
  return it == kRegistry.end() ? std::string_view{"Unregistered"} : it->name;
}

bool is_registered_code(int value) {
  return std::any_of(kRegistry.begin(), kRegistry.end(), [value](const ErrorInfo& e) {
    return static_cast<int>(e.code) == value;
  });
}

}  // namespace armordb
