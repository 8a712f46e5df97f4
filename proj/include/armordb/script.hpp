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


// Client scripts: one command per line in the text form, `#` comments,
// and `#expect` directives checked against the preceding response.
// Clauses: code=N, names=a,b (canonical, in order), consistent=true|false,
// applied=true|false.
//
//   MOUNT
//   #expect code=201
//   QUERY OBJECTPROP IND hasNorth LivingRoom
//   #expect names=Corridor

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "armordb/protocol.hpp"

namespace armordb {

struct Expectation {
  std::optional<ErrorCode> code;
  /// Canonical names, in the order given.
  std::optional<std::vector<std::string>> names;
  std::optional<bool> consistent;
  std::optional<bool> applied;

  /// Empty when `response` satisfies every clause, else a reason.
  std::string check(const protocol::CommandResponse& response) const;
};

struct ScriptLine {
  int line = 0;
  std::variant<protocol::CommandRequest, Expectation> item;
};

/// Throws ScriptError naming the line. Rows and arity are left for the
/// server to judge so scripts can expect 101/102 responses.
std::vector<ScriptLine> parse_script(std::string_view text, const std::string& client,
                                     const std::string& reference);

class ScriptError : public std::runtime_error {
 public:
  ScriptError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message) {}
};

}  // namespace armordb
