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


// Injected procedures: named macros over the text command form.
//
//   # comment
//   proc place(obj, room)
//     ADD INDIVIDUAL CLASS $obj Object
//     ADD OBJECTPROP INDIVIDUAL isIn $obj $room
//
// Parameters are substituted textually, so a value containing spaces
// becomes several arguments; arity is checked per step at run time.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "armordb/error.hpp"

namespace armordb {

inline constexpr std::string_view kAbstractClassProcedure = "abstract-class";

struct ProcedureStep {
  std::string text;
  int line = 0;
};

struct Procedure {
  std::string name;
  std::vector<std::string> params;
  std::vector<ProcedureStep> body;
};

/// Load-time diagnostics; the message starts with "line N: ".
class ProcedureFileError : public std::runtime_error {
 public:
  ProcedureFileError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

bool is_builtin_procedure(std::string_view name);

/// Replaces each `$param` with its value.
std::string substitute(std::string_view text, const std::vector<std::string>& params,
                       const std::vector<std::string>& values);

class ProcedureRegistry {
 public:
  /// Throws ProcedureFileError on syntax errors, redefinitions, reserved
  /// names and undeclared parameters.
  static ProcedureRegistry parse(std::string_view text);
  /// As parse; an unreadable file is a ProcedureFileError at line 0.
  static ProcedureRegistry load(const std::string& path);

  const Procedure* find(std::string_view name) const;
  std::size_t size() const { return procs_.size(); }

 private:
  std::map<std::string, Procedure, std::less<>> procs_;
};

}  // namespace armordb
