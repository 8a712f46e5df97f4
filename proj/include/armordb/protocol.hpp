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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "armordb/error.hpp"

namespace armordb::protocol {

enum class Command {
  kAdd,
  kRemove,
  kReplace,
  kQuery,
  kLoad,
  kSave,
  kCreate,
  kDrop,
  kMount,
  kUnmount,
  kReason,
  kApply,
  kConfig,
  kProc,
  kDump,
};

std::string_view command_name(Command c);
std::optional<Command> parse_command(std::string_view name);

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

/// One legal (command, primary, secondary) combination and its arity.
/// Absent specifiers are empty.
struct CommandRow {
  Command command;
  std::string_view primary;
  std::string_view secondary;
  std::size_t min_args;
  std::size_t max_args;
  std::string_view meaning;
};

/// The closed command table.
std::span<const CommandRow> command_table();

/// Uppercase atoms that may appear as specifiers.
bool is_specifier(std::string_view token);

const CommandRow* find_row(Command c, std::string_view primary, std::string_view secondary);

struct CommandRequest {
  std::string client_name;
  std::string reference_name;
  Command command = Command::kQuery;
  std::string primary_spec;
  std::string secondary_spec;
  std::vector<std::string> args;

  friend bool operator==(const CommandRequest&, const CommandRequest&) = default;
};

struct CommandResponse {
  bool success = true;
  bool consistent = true;
  ErrorCode error_code = ErrorCode::kOk;
  std::string error_description;
  std::vector<std::string> queried_names;
  bool applied = false;
  std::uint64_t revision = 0;

  static CommandResponse failure(ErrorCode code, std::string description);

  friend bool operator==(const CommandResponse&, const CommandResponse&) = default;
};

/// Checks the request against the command table. Throws Error with
/// kMalformedRequest (bad names), kUnknownCommand (no such row) or
/// kBadArity. Returns the matching row.
const CommandRow& validate(const CommandRequest& request);

/// Single-line JSON object with the fields in wire order.
std::string encode(const CommandRequest& request);
std::string encode(const CommandResponse& response);

/// Parses and validates one request line; throws Error on any defect.
CommandRequest decode_request(std::string_view line);
/// Parses one response line; throws Error(kMalformedRequest) on defects.
CommandResponse decode_response(std::string_view line);

/// Text form used by scripts and procedure bodies:
/// `VERB [PRIMARY [SECONDARY]] arg...`. Arguments are split on whitespace
/// outside parentheses; double quotes group a literal argument. Client
/// and reference names are left empty. Throws Error(kMalformedRequest)
/// or Error(kUnknownCommand).
CommandRequest parse_command_text(std::string_view text);

/// Renders a request back into the text form.
std::string format_command_text(const CommandRequest& request);

/// One line for people: `OK ...` or `ERROR <code> <name>: ...`.
std::string format_human(const CommandResponse& response);

}  // namespace armordb::protocol
